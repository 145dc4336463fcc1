from fractions import Fraction
from math import comb

import pytest

from posetmatrix import (
    CapExceeded,
    Poset,
    antichain,
    best_chen_li,
    best_gmt,
    binomial_shift_check,
    bounds_table,
    bukh_tree_coefficient,
    butterfly,
    chain,
    chen_li_bound,
    diamond,
    e_estimate,
    erdos_bound,
    gmt_bound,
    hasse_is_tree,
    induced_bound_pipeline,
    marcus_tardos_constant,
    middle_levels_free,
    vee,
    weak_chain_coefficient,
)


def test_erdos_bound_values():
    assert erdos_bound(4, 3) == 10
    assert erdos_bound(5, 2) == comb(5, 2)
    assert erdos_bound(3, 5) == 8
    assert erdos_bound(4, 1) == 0
    with pytest.raises(ValueError):
        erdos_bound(-1, 2)


def test_weak_chain_coefficient():
    assert weak_chain_coefficient(diamond()) == 3
    assert weak_chain_coefficient(chain(2)) == 1


def test_chen_li_values():
    assert chen_li_bound(diamond(), 1) == Fraction(5, 2)
    assert chen_li_bound(chain(2), 1) == 1
    assert chen_li_bound(butterfly(), 1) == 2
    assert best_chen_li(diamond()) == (1, Fraction(5, 2))
    with pytest.raises(ValueError):
        chen_li_bound(diamond(), 0)


def test_gmt_values():
    assert gmt_bound(diamond(), 2) == Fraction(5, 2)
    assert gmt_bound(diamond(), 3) == Fraction(19, 4)
    assert best_gmt(diamond()) == (2, Fraction(5, 2))
    with pytest.raises(ValueError):
        gmt_bound(diamond(), 1)


def test_marcus_tardos_constant():
    assert marcus_tardos_constant(1) == 2
    assert marcus_tardos_constant(2) == 192
    assert marcus_tardos_constant(3) == 13608
    with pytest.raises(ValueError):
        marcus_tardos_constant(0)


def test_binomial_shift_small():
    lhs, rhs, ok = binomial_shift_check(4, 2)
    assert (lhs, rhs, ok) == (20, 24, True)
    for n in range(0, 10):
        lhs, rhs, ok = binomial_shift_check(n, 1)
        assert ok and lhs == rhs


def test_hasse_tree_detection():
    assert hasse_is_tree(chain(4))
    assert hasse_is_tree(vee(3))
    assert hasse_is_tree(antichain(1))
    assert not hasse_is_tree(diamond())
    assert not hasse_is_tree(butterfly())
    assert not hasse_is_tree(antichain(2))  # disconnected
    assert bukh_tree_coefficient(vee(2)) == 1
    assert bukh_tree_coefficient(chain(3)) == 2
    with pytest.raises(ValueError, match="tree"):
        bukh_tree_coefficient(diamond())


def test_middle_levels_free_and_estimate():
    assert middle_levels_free(3, 2, diamond(), induced=True)
    assert not middle_levels_free(3, 3, diamond(), induced=True)
    assert e_estimate(diamond(), induced=True) == 2
    assert e_estimate(diamond(), induced=False) == 2
    assert e_estimate(chain(2), induced=False) == 1
    assert e_estimate(antichain(2), induced=False) == 0


def test_pipeline_diamond_routes():
    mt = induced_bound_pipeline(diamond(), "mt")
    assert mt["dimension"] == 2
    assert mt["K"] == "192"
    assert mt["coefficient"] == "768"
    assert mt["refined_coefficient"] == "768"
    exact = induced_bound_pipeline(diamond(), "exact")
    assert exact["K"] == "15/4"
    assert exact["coefficient"] == "15"
    assert "not a proof" in exact["K_provenance"]
    sup = induced_bound_pipeline(diamond(), "supplied", supplied=4)
    assert sup["coefficient"] == "16"


def test_pipeline_rejects_misuse():
    with pytest.raises(ValueError, match="chain"):
        induced_bound_pipeline(chain(3), "mt")
    with pytest.raises(ValueError, match="2-dimensional"):
        induced_bound_pipeline(_standard_example_3(), "mt")
    with pytest.raises(ValueError, match="supplied"):
        induced_bound_pipeline(diamond(), "supplied")
    with pytest.raises(ValueError, match="k_source"):
        induced_bound_pipeline(diamond(), "guess")


def test_pipeline_dim3_exact_route():
    got = induced_bound_pipeline(_standard_example_3(), "exact")
    assert got["dimension"] == 3
    # the 6^3 pattern never fits in a 3^3 box, so the empirical K is the
    # full cube density
    assert got["K"] == "3"
    assert got["coefficient"] == "24"


def test_bounds_table_diamond():
    table = bounds_table(diamond())
    assert table["schema"] == 1
    assert table["weak_chain_coefficient"] == "3"
    assert table["chen_li_m1"] == "5/2"
    assert table["gmt_k2"] == "5/2"
    assert table["marcus_tardos_k2"] == "192"
    assert table["bukh_tree"] == {"applies": False}
    assert table["induced_pipeline"]["mt"]["coefficient"] == "768"
    assert table["diamond_direct"] == {"K": "4", "coefficient": "16"}
    assert table["e_estimate_weak"] == 2


def test_bounds_table_other_posets():
    v = bounds_table(vee(2))
    assert v["bukh_tree"]["applies"] and v["bukh_tree"]["coefficient"] == "1"
    assert v["diamond_direct"] is None
    c = bounds_table(chain(3))
    assert c["induced_pipeline"]["available"] is False
    assert "chain" in c["induced_pipeline"]["reason"]


def _standard_example_3() -> Poset:
    bots = ["1", "2", "3"]
    tops = ["12", "13", "23"]
    pairs = [(b, t) for b in bots for t in tops if b in t]
    return Poset.from_pairs(bots + tops, pairs, close=True)
