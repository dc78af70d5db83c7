"""Double/triple quivers, vertex relations, loop cuts, and their
compatibility with edge contraction."""

import random

import pytest

from quiveralg.contraction import contract_qp, contract_quiver
from quiveralg.errors import PreconditionError
from quiveralg.paths import NCPoly, Path, Sym
from quiveralg.preprojective import (
    adhm_elimination_check,
    contract_triple_check,
    cut_relations,
    double_quiver,
    dual_name,
    loop_name,
    preprojective_relations,
    triple_qp,
)
from quiveralg.quiver import Arrow, Quiver

from conftest import random_quiver


def quiver(vertices, arrows, name="Q"):
    return Quiver(tuple(vertices), [Arrow(*a) for a in arrows], name=name)


A2 = quiver(("1", "2"), [("a", "1", "2")], name="A2")
JORDAN = quiver(("1",), [("a", "1", "1")], name="J")
# x --e--> i+ --a0--> i-, the smallest instance with a far vertex.
PATH3 = quiver(("x", "i+", "i-"), [("e", "x", "i+"), ("a0", "i+", "i-")])


def term_strings(potential):
    return sorted((str(w), c) for w, c in potential.terms.items())


def test_dual_and_loop_names():
    assert dual_name("a") == "a*"
    assert dual_name("a*") == "a**"  # duals are fresh arrows, not an involution
    assert loop_name("i+") == "l_i+"


def test_double_quiver_a2():
    D = double_quiver(A2)
    assert {(a.id, a.source, a.target) for a in D.arrows} == {
        ("a", "1", "2"),
        ("a*", "2", "1"),
    }
    assert D.vertices == A2.vertices


def test_double_quiver_reverses_duals():
    rng = random.Random(31)
    for _ in range(15):
        Q = random_quiver(rng)
        D = double_quiver(Q)
        assert len(D.arrows) == 2 * len(Q.arrows)
        for a in Q.arrows:
            d = D.arrow(dual_name(a.id))
            assert (d.source, d.target) == (a.target, a.source)


def test_triple_qp_a2_frozen():
    T = triple_qp(A2)
    assert {(a.id, a.source, a.target) for a in T.quiver.arrows} == {
        ("a", "1", "2"),
        ("a*", "2", "1"),
        ("l_1", "1", "1"),
        ("l_2", "2", "2"),
    }
    assert term_strings(T.potential) == [("a.a*.l_2", 1), ("a.l_1.a*", -1)]


def test_triple_qp_jordan():
    T = triple_qp(JORDAN)
    # Both cubic terms live at the single vertex yet stay distinct words.
    assert term_strings(T.potential) == [("a.a*.l_1", 1), ("a.l_1.a*", -1)]


def test_triple_qp_arrowless():
    Q = quiver(("1", "2"), [])
    T = triple_qp(Q)
    assert {a.id for a in T.quiver.arrows} == {"l_1", "l_2"}
    assert T.potential.terms == {}


def test_preprojective_relations_a2_frozen():
    rel = preprojective_relations(A2)
    assert [(v, str(p)) for v, p in rel.entries] == [
        ("1", "-a*.a"),
        ("2", "a.a*"),
    ]


def test_preprojective_relations_jordan():
    rel = preprojective_relations(JORDAN)
    assert rel.at("1") == NCPoly.of_path(Path((Sym("a"), Sym("a*"))), 1) + NCPoly.of_path(
        Path((Sym("a*"), Sym("a"))), -1
    )


def test_connector_term_signs():
    # A designated arrow a0: i+ -> i- contributes -a0*.a0 at its source
    # and +a0.a0* at its target.
    Q = quiver(("i+", "i-"), [("a0", "i+", "i-")])
    rel = preprojective_relations(Q)
    src = rel.at("i+").terms
    tgt = rel.at("i-").terms
    assert src[Path((Sym("a0*"), Sym("a0")))] == -1
    assert tgt[Path((Sym("a0"), Sym("a0*")))] == 1


def test_relation_terms_closed_at_vertex():
    rng = random.Random(32)
    for _ in range(15):
        Q = random_quiver(rng)
        D = double_quiver(Q)
        rel = preprojective_relations(Q)
        for v, poly in rel.entries:
            for p in poly.terms:
                assert p.source(D) == v and p.target(D) == v


def test_cut_relations_match_preprojective():
    rng = random.Random(33)
    for _ in range(15):
        Q = random_quiver(rng)
        T = triple_qp(Q)
        cuts = cut_relations(T.quiver, T.potential, [loop_name(v) for v in Q.vertices])
        rel = preprojective_relations(Q)
        for v in Q.vertices:
            assert cuts.at(v) == rel.at(v)


def test_cut_relations_keeps_given_order():
    T = triple_qp(A2)
    cuts = cut_relations(T.quiver, T.potential, ["l_2", "l_1"])
    assert [v for v, _ in cuts.entries] == ["2", "1"]


def test_cut_relations_rejects_non_loop():
    T = triple_qp(A2)
    with pytest.raises(PreconditionError):
        cut_relations(T.quiver, T.potential, ["a"])


def test_contracted_triple_loop_cuts_frozen():
    # Cutting the three loops of the contracted triple of PATH3: the far
    # vertex gives the plain relation, the two merged-vertex cuts carry
    # -a0**a0 and +a0**a0, and their sum eliminates that letter.
    T = triple_qp(PATH3)
    lhs = contract_qp(T, "a0")
    _, hat_map, _ = contract_quiver(T.quiver, "a0")
    cut = [hat_map[loop_name(v)] for v in ("x", "i+", "i-")]
    assert cut == ["l_x", "l_i+", "a0^-1*l_i-*a0"]
    cuts = cut_relations(lhs.quiver, lhs.potential, cut)
    assert [(v, str(p)) for v, p in cuts.entries] == [
        ("x", "-e*.e"),
        ("i+", "-a0**a0 + e.e*"),
        ("i+", "a0**a0"),
    ]
    merged = cuts.at("i+")
    assert str(merged) == "e.e*"
    assert all(s.arrow != "a0**a0" for p in merged.terms for s in p.syms)


TRIPLE_CASES = [
    ("a2", A2, "a"),
    ("path3", PATH3, "a0"),
    ("kronecker", quiver(("1", "2"), [("a0", "1", "2"), ("b", "1", "2")]), "a0"),
    (
        "loop_at_source",
        quiver(
            ("i+", "i-", "x"),
            [("a0", "i+", "i-"), ("l", "i+", "i+"), ("b", "x", "i-"), ("c", "i-", "x")],
        ),
        "a0",
    ),
    ("loop_at_target", quiver(("i+", "i-"), [("a0", "i+", "i-"), ("m", "i-", "i-")]), "a0"),
    ("reverse_arrow", quiver(("i+", "i-"), [("a0", "i+", "i-"), ("r", "i-", "i+")]), "a0"),
]


@pytest.mark.parametrize("label,Q,a0", TRIPLE_CASES, ids=[c[0] for c in TRIPLE_CASES])
def test_contract_triple_check_cases(label, Q, a0):
    assert contract_triple_check(Q, a0)


@pytest.mark.parametrize("label,Q,a0", TRIPLE_CASES, ids=[c[0] for c in TRIPLE_CASES])
def test_adhm_elimination_cases(label, Q, a0):
    assert adhm_elimination_check(Q, a0)


def random_contractions(seed, count):
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        Q = random_quiver(rng, name=f"R{len(found)}")
        nonloops = [a for a in Q.arrows if a.source != a.target]
        if nonloops:
            found.append((Q, rng.choice(nonloops).id))
    return found


def test_contract_triple_check_random_family():
    for Q, a0 in random_contractions(seed=34, count=12):
        assert contract_triple_check(Q, a0), (Q.name, a0)


def test_adhm_elimination_random_family():
    for Q, a0 in random_contractions(seed=35, count=12):
        assert adhm_elimination_check(Q, a0), (Q.name, a0)


def test_adhm_elimination_rejects_loop():
    with pytest.raises(PreconditionError):
        adhm_elimination_check(JORDAN, "a")
