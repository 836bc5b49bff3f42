"""Acceptance gate: the nine contract criteria at their stated sizes.

Each criterion runs against the same independent oracles the unit suites
use, measures its own wall-clock budget, and reports one verdict line in
the terminal summary (and immediately when run with -s).
"""

import itertools
import json
import math
import random
import sys
import time

import conftest

from nomfix.abstraction import _eq_at, abstr, abstr_eq
from nomfix.cli import main
from nomfix.fsfunc import (
    FsFun,
    distinct_apply,
    distinct_fs_eq,
    fill,
    fs_apply,
    fs_eq,
    fs_from_table,
    restrict_distinct,
    section,
    uniq,
)
from nomfix.nomauto import dfa_accepts, dfa_brute_equiv, dfa_equiv, dfa_from_jsonable
from nomfix.nomset import (
    CoordGroup,
    Element,
    OrbitDescriptor,
    OrbitFiniteSet,
    enumerate_with_support,
    min_support,
)
from nomfix.perm import (
    FinPerm,
    apply,
    apply_set,
    compose,
    factor,
    fresh,
    make_perm,
    restrict,
)
from nomfix.serialize import canonical_dumps
from nomfix.termgraph import (
    CUT,
    TreeNode,
    act_graph,
    act_tree,
    alpha_bisim,
    free_atoms,
    graph_from_jsonable,
    graph_to_jsonable,
    raw_bisim,
    render_tree,
    truncation_eq,
    unfold,
)
from nomfix.values import act_value, support_value, value_eq

from helpers import all_words, random_dfa, random_lambda_graph
from test_cli import L1_BLOB, L1_RENAMED_BLOB, LAM_BLOB, RENAMED_BLOB
from test_fsfunc import rand_nested2
from test_nomauto import l1_dfa, reject_all_dfa
from test_nomset import brute_min_support
from test_perm import random_perm, restrict_oracle
from test_termgraph import lam_graph, swapped_graph


def _report(line):
    conftest.record_acceptance(line)
    print(line)


def _criterion(number, name, budget, body):
    started = time.perf_counter()
    try:
        body()
    except BaseException:
        _report(f"[ACCEPTANCE] C{number} {name}: FAIL")
        raise
    elapsed = time.perf_counter() - started
    verdict = "PASS" if elapsed < budget else "FAIL"
    _report(
        f"[ACCEPTANCE] C{number} {name}: {verdict}"
        f" ({elapsed:.2f}s, budget {budget:g}s)"
    )
    assert elapsed < budget, f"criterion {number} took {elapsed:.2f}s"


def test_criterion_1_permutations():
    def body():
        rng = random.Random(101)
        pool = list(range(8))
        for _ in range(1000):
            f, _ = random_perm(rng, pool)
            w = set(rng.sample(range(10), rng.randrange(5)))
            g = restrict(f, w)
            assert isinstance(g, FinPerm)
            fw = apply_set(f, w)
            for v in w | fw | {11}:
                assert apply(g, v) == restrict_oracle(f, w, v)
            assert apply_set(g, w) == fw
            assert apply_set(g, fw - w) == w - fw
            assert {a for a in g.moved() if a not in w | fw} == set()
            left, right = factor(f, w)
            assert left == g
            assert all(apply(right, v) == v for v in w)
            assert compose(left, right) == f
            h, _ = random_perm(rng, pool)
            both = restrict(compose(f, h), w)
            f_part = restrict(f, apply_set(h, w))
            h_part = restrict(h, w)
            for v in w:
                assert apply(both, v) == apply(f_part, apply(h_part, v))

    _criterion(1, "permutation restriction and factorization", 1.0, body)


def test_criterion_2_minimal_support():
    def body():
        rng = random.Random(102)
        family = OrbitFiniteSet([
            OrbitDescriptor("pt", 0, CoordGroup(0)),
            OrbitDescriptor("pr", 2, CoordGroup(2)),
            OrbitDescriptor("up", 2, CoordGroup(2, [(1, 0)])),
        ])

        def rand_value():
            kind = rng.randrange(4)
            if kind == 0:
                return tuple(rng.randrange(6) for _ in range(rng.randrange(4)))
            if kind == 1:
                name = rng.choice(["pt", "pr", "up"])
                degree = family.orbit(name).degree
                return Element(family, name, tuple(rng.sample(range(6), degree)))
            if kind == 2:
                return abstr(
                    rng.randrange(6),
                    tuple(rng.randrange(6) for _ in range(2)),
                )
            keys = tuple(rng.sample(range(5), rng.randrange(3)))
            vals = tuple(rng.randrange(5) for _ in keys)
            return FsFun(rng.randrange(6), rng.randrange(6), keys, vals)

        for _ in range(200):
            x = rand_value()
            assert min_support(x, range(6)) == brute_min_support(x, range(6))
            pi = make_perm([tuple(rng.sample(range(8), 2)) for _ in range(3)])
            moved = support_value(act_value(pi, x))
            assert moved == frozenset(apply(pi, a) for a in support_value(x))

    _criterion(2, "minimal support search", 5.0, body)


def test_criterion_3_factorial_bound():
    def body():
        cases = [
            (0, CoordGroup(0), 1),
            (1, CoordGroup(1), 1),
            (2, CoordGroup(2), 2),
            (2, CoordGroup(2, [(1, 0)]), 1),
            (3, CoordGroup(3), 6),
            (3, CoordGroup(3, [(1, 2, 0)]), 2),
            (3, CoordGroup(3, [(1, 0, 2), (1, 2, 0)]), 1),
        ]
        for degree, symmetry, expected in cases:
            family = OrbitFiniteSet([OrbitDescriptor("o", degree, symmetry)])
            atoms = set(range(4, 4 + degree))
            elements = enumerate_with_support(family, atoms)
            assert len(elements) == expected
            assert expected == math.factorial(degree) // symmetry.order
            assert len(elements) <= math.factorial(degree)
            assert len(set(elements)) == len(elements)

    _criterion(3, "factorial orbit bound", 1.0, body)


def test_criterion_4_abstractions():
    def body():
        rng = random.Random(104)

        def rand_abs():
            size = rng.randrange(1, 4)
            return abstr(
                rng.randrange(5),
                tuple(rng.randrange(5) for _ in range(size)),
            )

        pool = [rand_abs() for _ in range(500)]
        for x in pool:
            assert abstr_eq(x, x)
        for _ in range(500):
            x, y, z = (rng.choice(pool) for _ in range(3))
            assert abstr_eq(x, y) == abstr_eq(y, x)
            if abstr_eq(x, y) and abstr_eq(y, z):
                assert abstr_eq(x, z)
        for _ in range(500):
            x, y = rng.choice(pool), rng.choice(pool)
            joint = x.support() | y.support() | {x.binder, y.binder}
            verdicts = set()
            probe = fresh(joint)
            for _ in range(5):
                verdicts.add(_eq_at(x, y, probe))
                probe = fresh(joint | {probe})
            assert len(verdicts) == 1
        for _ in range(500):
            v = rng.randrange(5)
            body_v = tuple(rng.randrange(5) for _ in range(3))
            w = fresh(set(body_v) | {v})
            swapped = act_value(make_perm([(v, w)]), body_v)
            assert abstr_eq(abstr(v, body_v), abstr(w, swapped))

    _criterion(4, "abstraction alpha-equivalence", 2.0, body)


def test_criterion_5_supported_functions():
    def body():
        rng = random.Random(105)
        for _ in range(500):
            table = {
                k: rng.randrange(6) for k in rng.sample(range(6), rng.randrange(4))
            }
            a = fresh(table)
            d = rng.randrange(6)
            f = fs_from_table(table, (a, d))
            for k, v in table.items():
                assert fs_apply(f, k) == v
            assert fs_apply(f, a) == d
            # rebuilding from the function's own trace gives it back
            keys = tuple(sorted(f.support()))
            probe = fresh(f.support())
            rebuilt = fs_from_table(
                {k: fs_apply(f, k) for k in keys}, (probe, fs_apply(f, probe))
            )
            assert rebuilt == f and fs_eq(rebuilt, f)
        for _ in range(500):
            n = rng.randrange(1, 4)
            v = tuple(rng.choice(range(5)) for _ in range(n))
            w = tuple(rng.sample(range(12), 2 * n))
            out = fill(v, w)
            assert len(out) == n and len(set(out)) == n
            assert out[: len(uniq(v))] == uniq(v)
            assert set(out) <= set(uniq(v)) | set(w)
            distinct = tuple(rng.sample(range(6), n))
            assert uniq(distinct) == distinct
            assert fill(distinct, tuple(rng.sample(range(6, 20), 2 * n))) == distinct
        for _ in range(200):
            f = restrict_distinct(rand_nested2(rng))
            w = tuple(rng.sample(range(12), 4))
            back = restrict_distinct(section(f, w))
            for pair in itertools.permutations(range(5), 2):
                assert value_eq(distinct_apply(back, pair), distinct_apply(f, pair))
            assert distinct_fs_eq(back, f)

        def rand_fs():
            keys = tuple(rng.sample(range(5), rng.randrange(3)))
            vals = tuple(rng.randrange(5) for _ in keys)
            return FsFun(rng.randrange(6), rng.randrange(6), keys, vals)

        for _ in range(1000):
            f, g = rand_fs(), rand_fs()
            pointwise = all(
                value_eq(fs_apply(f, b), fs_apply(g, b)) for b in range(20)
            )
            assert fs_eq(f, g) == pointwise

    _criterion(5, "finitely supported functions", 5.0, body)


def test_criterion_6_rational_behaviours():
    def body():
        rng = random.Random(106)
        for _ in range(500):
            g1, s1 = random_lambda_graph(rng)
            g2, s2 = random_lambda_graph(rng)
            atoms = set()
            for graph in (g1, g2):
                for node in graph.states.values():
                    atoms.update(node.atoms)
                    for bound, _ in node.groups:
                        atoms.update(bound)
            bound = (
                len(g1.states) * len(g2.states) * (len(atoms) + 1) ** len(atoms)
            )
            alpha = alpha_bisim(g1, s1, g2, s2)
            assert alpha == truncation_eq(g1, s1, g2, s2, bound)
            if raw_bisim(g1, s1, g2, s2):
                assert alpha
        plain, renamed, swapped = lam_graph(), lam_graph(binder=1), swapped_graph()
        assert alpha_bisim(plain, "s", renamed, "s")
        assert not alpha_bisim(plain, "s", swapped, "s")
        assert truncation_eq(plain, "s", swapped, "s", 2)
        assert not truncation_eq(plain, "s", swapped, "s", 3)

    _criterion(6, "rational behaviour equivalence", 30.0, body)


def test_criterion_7_equivariance():
    def body():
        rng = random.Random(107)
        for _ in range(200):
            graph, start = random_lambda_graph(rng)
            pi = make_perm([tuple(rng.sample(range(6), 2)) for _ in range(3)])
            moved = act_graph(pi, graph)
            for k in range(7):
                assert unfold(moved, start, k) == act_tree(pi, unfold(graph, start, k))
            fv = free_atoms(graph, start)
            atoms = {
                a
                for node in graph.states.values()
                for a in node.atoms
            } | {
                a
                for node in graph.states.values()
                for bound, _ in node.groups
                for a in bound
            }
            spare = sorted((atoms - fv) | {8, 9, 10, 11})
            sigma = make_perm([
                tuple(rng.sample(spare, 2)) for _ in range(2)
            ])
            assert all(apply(sigma, a) == a for a in fv)
            assert alpha_bisim(graph, start, act_graph(sigma, graph), start)

    _criterion(7, "equivariance of behaviour", 10.0, body)


def test_criterion_8_automata():
    def body():
        l1 = l1_dfa()
        words = list(all_words(3, 3))
        assert len(words) == 40  # the 39 nonempty words plus the empty one
        for word in words:
            expected = len(word) >= 2 and word[0] == word[1]
            assert dfa_accepts(l1, word) == expected
        rng = random.Random(108)
        for _ in range(200):
            d1, d2 = random_dfa(rng), random_dfa(rng)
            equal, cex = dfa_equiv(d1, d2)
            pool = (
                max(o.degree for o in d1.family.orbits)
                + max(o.degree for o in d2.family.orbits)
                + 1
            )
            max_len = 4 if equal else max(len(cex), 4)
            brute_equal, brute_cex = dfa_brute_equiv(d1, d2, max_len, pool)
            assert brute_equal == equal
            if not equal:
                assert len(brute_cex) == len(cex)
                assert dfa_accepts(d1, cex) != dfa_accepts(d2, cex)
        assert dfa_equiv(l1, dfa_from_jsonable(L1_RENAMED_BLOB)) == (True, None)
        equal, cex = dfa_equiv(l1, reject_all_dfa())
        assert not equal and len(cex) == 2 and cex[0] == cex[1]

    _criterion(8, "automata language equivalence", 20.0, body)


def test_criterion_9_cli_golden(tmp_path, capsys):
    def body():
        def write(name, blob):
            path = tmp_path / name
            path.write_text(canonical_dumps(blob), encoding="utf-8")
            return str(path)

        g1 = write("g1.json", LAM_BLOB)
        g2 = write("g2.json", RENAMED_BLOB)
        l1 = write("l1.json", L1_BLOB)
        assert main(["alpha-eq", g1, "s", g2, "s"]) == 0
        assert capsys.readouterr().out == "alpha-equivalent\n"
        assert main(["unfold", g1, "s", "--depth", "3"]) == 0
        assert capsys.readouterr().out == "(lam 0 (app (var 0) (lam 0 ⊥)))\n"
        assert main(["dfa-run", l1, "3,4"]) == 1
        assert capsys.readouterr().out == "reject\n"
        assert render_tree(CUT) == "⊥"
        assert render_tree(CUT, ascii_cut=True) == "_"
        assert render_tree(TreeNode("var", (3,), ())) == "(var 3)"
        raw = (tmp_path / "g1.json").read_text(encoding="utf-8")
        reemitted = canonical_dumps(graph_to_jsonable(graph_from_jsonable(json.loads(raw))))
        assert reemitted == raw

    _criterion(9, "cli golden outputs", 5.0, body)
