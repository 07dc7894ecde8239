import json

import pytest

from hfw.constructions import (
    enumerate_hyperfields,
    field_f2,
    fp_squares,
    krasner_hyperfield,
    sign_hyperfield,
)
from hfw.sgntrop import q_punits_hyperfield, signed_tropical


@pytest.fixture(scope="session")
def finite_builtins():
    """The finite structures every battery runs over."""
    return [
        sign_hyperfield(),
        krasner_hyperfield(),
        field_f2(),
        fp_squares(5).structure,
        fp_squares(7).structure,
    ]


@pytest.fixture(scope="session")
def mutation_targets():
    """The four finite structures the mutation sweep quantifies over."""
    return [
        sign_hyperfield(),
        krasner_hyperfield(),
        fp_squares(5).structure,
        fp_squares(7).structure,
    ]


@pytest.fixture(scope="session")
def tropical1():
    return signed_tropical(1)


@pytest.fixture(scope="session")
def tropical2():
    return signed_tropical(2)


@pytest.fixture(scope="session")
def punits2():
    return q_punits_hyperfield(2)


@pytest.fixture(scope="session")
def punits3():
    return q_punits_hyperfield(3)


@pytest.fixture(scope="session")
def enumerated_small():
    """Hyperfields of orders 2 through 4, one list per order."""
    return {n: enumerate_hyperfields(n) for n in (2, 3, 4)}


@pytest.fixture()
def spec_file(tmp_path):
    def write(obj, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return write
