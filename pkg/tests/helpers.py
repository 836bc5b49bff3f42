"""Shared generators and independent oracles for graph and automaton tests."""

import itertools

from nomfix.termgraph import CUT, LAMBDA_SIG, Node, TermGraph


def random_lambda_graph(rng, max_states=4, atom_pool=4):
    n = rng.randrange(1, max_states + 1)
    names = [f"s{i}" for i in range(n)]
    states = {}
    for name in names:
        kind = rng.choice(("lam", "app", "var"))
        if kind == "var":
            states[name] = Node("var", (rng.randrange(atom_pool),), ())
        elif kind == "lam":
            states[name] = Node("lam", (), (((rng.randrange(atom_pool),),
                                             (rng.choice(names),)),))
        else:
            states[name] = Node("app", (), (((), (rng.choice(names),
                                                  rng.choice(names))),))
    return TermGraph(LAMBDA_SIG, states), "s0"


def debruijn(tree, env=None, depth=0):
    """Locally nameless form: bound atoms become binder coordinates.

    Two finite trees are alpha-equal exactly when these forms are equal,
    which makes this an oracle independent of the injection machinery.
    """
    if env is None:
        env = {}
    if tree is CUT:
        return "cut"
    slots = tuple(env.get(a, ("free", a)) for a in tree.atoms)
    groups = []
    for gi, (bound, children) in enumerate(tree.groups):
        inner = dict(env)
        for bi, b in enumerate(bound):
            inner[b] = ("bound", depth, gi, bi)
        groups.append(tuple(debruijn(c, inner, depth + 1) for c in children))
    return (tree.op, tree.label, slots, tuple(groups))


def tree_alpha_oracle(t1, t2):
    return debruijn(t1) == debruijn(t2)


def raw_tree(tree):
    """Exact form, binders kept verbatim; oracle for raw bisimilarity."""
    if tree is CUT:
        return "cut"
    return (tree.op, tree.label, tree.atoms,
            tuple((bound, tuple(raw_tree(c) for c in children))
                  for bound, children in tree.groups))


def all_words(pool, max_len):
    for length in range(max_len + 1):
        yield from itertools.product(range(pool), repeat=length)


def random_dfa(rng, max_orbits=3, max_degree=2):
    """A valid random deterministic nominal automaton.

    The initial orbit has degree 0, every orbit gets a full rule set, and
    source pools respect the collision rule for equal cases, so the result
    always passes construction-time validation.
    """
    from nomfix.nomauto import INPUT, NomDFA, OrbitRules, TargetExpr

    count = rng.randrange(1, max_orbits + 1)
    names = [f"p{i}" for i in range(count)]
    degrees = {names[0]: 0}
    for name in names[1:]:
        degrees[name] = rng.randrange(max_degree + 1)

    def expr(degree, equal_index):
        if equal_index is None:
            pool = [INPUT] + list(range(degree))
        elif rng.random() < 0.5:
            pool = [INPUT] + [i for i in range(degree) if i != equal_index]
        else:
            pool = list(range(degree))
        target = rng.choice([t for t in names if degrees[t] <= len(pool)])
        return TargetExpr(target, tuple(rng.sample(pool, degrees[target])))

    delta = {}
    for name in names:
        degree = degrees[name]
        delta[name] = OrbitRules(
            tuple(expr(degree, j) for j in range(degree)),
            expr(degree, None),
        )
    accepting = frozenset(n for n in names if rng.random() < 0.5)
    return NomDFA(degrees, names[0], accepting, delta)
