import pytest

from structcodesign.errors import InvalidSpec
from structcodesign.generator import GenSpec, generate
from structcodesign.graph import build_digraph, has_spanning_cycle_family, is_irreducible
from structcodesign.model import INF, validate_instance


def test_single_state_is_irreducible():
    assert is_irreducible(generate(GenSpec(n=1, p=1, m=1)).A)


@pytest.mark.parametrize("backbone", ["cycle", "tree"])
def test_backbone_gives_irreducible_valid_instances(backbone):
    for seed in range(50):
        inst = validate_instance(generate(GenSpec(n=5, p=3, m=3, seed=seed, backbone=backbone)))
        assert is_irreducible(inst.A)
        assert all(0 <= c <= 20 for c in inst.cost_u + inst.cost_y)
        assert all(c == INF or 0 <= c <= 20 for row in inst.cost_f for c in row)


def test_cycle_backbone_always_has_cycle_cover():
    for seed in range(30):
        inst = generate(GenSpec(n=6, p=0, m=0, edge_density=0.05, seed=seed))
        assert has_spanning_cycle_family(build_digraph(inst.A))


def test_tree_backbone_often_lacks_cycle_cover():
    lacking = sum(
        not has_spanning_cycle_family(build_digraph(
            generate(GenSpec(n=6, p=0, m=0, edge_density=0.05, seed=s, backbone="tree")).A))
        for s in range(30)
    )
    assert lacking >= 10


def test_deterministic():
    spec = GenSpec(n=4, p=2, m=2, seed=17)
    assert generate(spec) == generate(spec)
    assert generate(spec) != generate(GenSpec(n=4, p=2, m=2, seed=18))


def test_infinite_fraction_roughly_respected():
    inst = generate(GenSpec(n=3, p=20, m=20, inf_fraction=0.2, seed=3))
    frac = sum(c == INF for row in inst.cost_f for c in row) / 400
    assert 0.12 < frac < 0.28


@pytest.mark.parametrize("kwargs", [
    {"n": 0, "p": 1, "m": 1},
    {"n": 2, "p": -1, "m": 1},
    {"n": 2, "p": 1, "m": 1, "edge_density": 0.0},
    {"n": 2, "p": 1, "m": 1, "inf_fraction": 1.0},
    {"n": 2, "p": 1, "m": 1, "cost_range": (5, 1)},
    {"n": 2, "p": 1, "m": 1, "backbone": "star"},
])
def test_invalid_specs(kwargs):
    with pytest.raises(InvalidSpec):
        generate(GenSpec(**kwargs))
