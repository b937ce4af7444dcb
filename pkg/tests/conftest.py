import json
from importlib import resources

import pytest

from quditcodes.codes import Code, code_from_json

SHIPPED = ("qutrit13", "c2_d5_n16", "c3_d7_n36", "c4_d7_n20_eta6")


def shipped_code(name: str) -> Code:
    entry = resources.files("quditcodes.data").joinpath(name + ".json")
    return code_from_json(json.loads(entry.read_text()))


@pytest.fixture(scope="session")
def corpus():
    return {name: shipped_code(name) for name in SHIPPED}
