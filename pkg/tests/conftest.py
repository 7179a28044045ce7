import copy
import json
from pathlib import Path

import pytest

from skewalg import Field, PartialAction, glue_components
from skewalg.instances import load_instance, parse_instance

INSTANCE_DIR = Path(__file__).resolve().parent.parent / "instances"


def instance_path(name: str) -> Path:
    return INSTANCE_DIR / name


def load_action(name: str) -> PartialAction:
    return load_instance(instance_path(name)).action


def instance_data(name: str) -> dict:
    return json.loads(instance_path(name).read_text())


def renamed_instance(data: dict, prefix: str) -> dict:
    """Rename all objects and morphisms so two copies can be glued."""
    d = copy.deepcopy(data)

    def ro(o):
        return prefix + o

    def rm(m):
        return "id:" + ro(m[3:]) if m.startswith("id:") else prefix + m

    g = d["groupoid"]
    g["objects"] = [ro(o) for o in g["objects"]]
    g["morphisms"] = [{"name": rm(m["name"]), "src": ro(m["src"]), "tgt": ro(m["tgt"])}
                      for m in g["morphisms"]]
    g["compose"] = [[rm(a), rm(b), rm(c)] for a, b, c in g["compose"]]
    g["inverse"] = [[rm(a), rm(b)] for a, b in g["inverse"]]
    d["action"] = {rm(m): v for m, v in d["action"].items()}
    if "basis_names" in d["algebra"]:
        d["algebra"]["basis_names"] = [prefix + n for n in d["algebra"]["basis_names"]]
    return d


@pytest.fixture(scope="session")
def bridge():
    """Two objects joined by one arrow; 4-dim diagonal algebra, partial domains."""
    return load_action("partial_bridge_q.json")


@pytest.fixture(scope="session")
def flip_q():
    """Z/2 isotropy at both objects, bridge arrows act on zero ideals."""
    return load_action("z2_flip_q.json")


@pytest.fixture(scope="session")
def flip_gf2():
    return load_action("z2_flip_gf2.json")


@pytest.fixture(scope="session")
def flip_gf3():
    return load_action("z2_flip_gf3.json")


@pytest.fixture(scope="session")
def pair_swap():
    """Global connected action: pair groupoid swapping two 1-dim blocks."""
    return load_action("pair_swap_global_q.json")


@pytest.fixture(scope="session")
def glued_double():
    """Disjoint union of two renamed copies of the bridge instance."""
    base = instance_data("partial_bridge_q.json")
    left = parse_instance(renamed_instance(base, "L.")).action
    right = parse_instance(renamed_instance(base, "R.")).action
    return glue_components([left, right])


def trivial_group_on_field(field: Field) -> PartialAction:
    """One object, only its identity, acting on the 1-dim algebra."""
    from skewalg import Algebra, build_groupoid

    g = build_groupoid(["e"], [], [], [])
    a = Algebra.diagonal(field, 1, ["v"])
    return PartialAction(g, a, {"id:e": [1]}, {})


@pytest.fixture(scope="session")
def trivial_q():
    return trivial_group_on_field(Field.rationals())
