"""Finite systems of equations over binding operations and the infinite
trees they denote.

A :class:`TermGraph` is a finite set of named states, each labelled with an
operation from a :class:`BindingSignature`.  Operations carry free atom
slots and groups of children, and a group may bind atoms whose scope is
exactly the children of that group.  A state denotes the (generally
infinite) tree obtained by unfolding its equation forever; :func:`unfold`
produces the finite truncation at a given depth, with :data:`CUT` marking
the pruned subtrees.

Two notions of behavioural equivalence are provided: :func:`raw_bisim`
compares denoted trees literally, while :func:`alpha_bisim` compares them
up to renaming of bound atoms.  Both are decided by closing a finite set of
state-pair configurations, so they terminate even though the denoted trees
are infinite.  :func:`truncation_eq` answers the depth-bounded variant of
the alpha-aware comparison without materialising the truncations.
"""

from collections import deque
from dataclasses import dataclass
from types import MappingProxyType

from .perm import apply

__all__ = [
    "CUT",
    "LAMBDA_SIG",
    "BindingSignature",
    "Node",
    "OpSpec",
    "TermGraph",
    "TreeNode",
    "act_graph",
    "act_tree",
    "alpha_bisim",
    "free_atoms",
    "graph_from_jsonable",
    "graph_to_jsonable",
    "parse_tree",
    "raw_bisim",
    "render_tree",
    "signature_from_jsonable",
    "signature_to_jsonable",
    "tree_alpha_eq",
    "tree_free_atoms",
    "truncation_eq",
    "unfold",
    "validate",
]


class _Cut:
    """Marker for a pruned subtree in a finite truncation."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "CUT"


CUT = _Cut()


@dataclass(frozen=True)
class OpSpec:
    """Shape of one operation: free atom slots plus binder groups.

    Each binder group is a pair ``(bound_count, child_count)``: the group
    binds ``bound_count`` atoms whose scope is its ``child_count`` children.
    Operations may optionally carry a label drawn from a fixed finite set.
    """

    name: str
    atom_arity: int
    binder_groups: tuple
    labels: frozenset | None = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("operation name must be nonempty")
        if self.atom_arity < 0:
            raise ValueError("atom arity must be nonnegative")
        groups = tuple((int(b), int(c)) for b, c in self.binder_groups)
        for bound, children in groups:
            if bound < 0:
                raise ValueError("bound count must be nonnegative")
            if children < 1:
                raise ValueError("each binder group needs at least one child")
        object.__setattr__(self, "binder_groups", groups)
        if self.labels is not None:
            object.__setattr__(self, "labels", frozenset(self.labels))


class BindingSignature:
    """A finite family of operations, looked up by name."""

    def __init__(self, ops):
        self.ops = tuple(ops)
        self._by_name = {}
        for spec in self.ops:
            if spec.name in self._by_name:
                raise ValueError(f"duplicate operation '{spec.name}'")
            self._by_name[spec.name] = spec

    def op(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise ValueError(f"unknown operation '{name}'") from None

    def __contains__(self, name):
        return name in self._by_name

    def __eq__(self, other):
        if not isinstance(other, BindingSignature):
            return NotImplemented
        return self.ops == other.ops

    def __hash__(self):
        return hash(self.ops)

    def __repr__(self):
        return f"BindingSignature({list(self._by_name)})"


#: The untyped lambda calculus: ``lam`` binds one atom over one child,
#: ``app`` has two children and binds nothing, ``var`` mentions one atom.
LAMBDA_SIG = BindingSignature([
    OpSpec("lam", 0, ((1, 1),)),
    OpSpec("app", 0, ((0, 2),)),
    OpSpec("var", 1, ()),
])


@dataclass(frozen=True)
class Node:
    """One equation right-hand side: an operation applied to atoms and
    groups of child state names, with the group's bound atoms in front."""

    op: str
    atoms: tuple
    groups: tuple
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(
            self,
            "groups",
            tuple((tuple(bound), tuple(children)) for bound, children in self.groups),
        )


@dataclass(frozen=True)
class TreeNode:
    """A node of a finite tree; children are trees or :data:`CUT`."""

    op: str
    atoms: tuple
    groups: tuple
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(
            self,
            "groups",
            tuple((tuple(bound), tuple(children)) for bound, children in self.groups),
        )


class TermGraph:
    """A finite system of equations over a binding signature.

    ``states`` maps state names to :class:`Node` right-hand sides.  The
    mapping is exposed read-only because validity and free-atom
    information are cached on the instance.
    """

    def __init__(self, signature, states):
        if not isinstance(signature, BindingSignature):
            raise TypeError("signature must be a BindingSignature")
        store = {}
        for name, node in states.items():
            if not isinstance(name, str):
                raise TypeError("state names must be strings")
            if not isinstance(node, Node):
                raise TypeError("states must map names to Node values")
            store[name] = node
        self._states = store
        self.signature = signature
        self.states = MappingProxyType(store)
        self._problems = None
        self._fv = None

    def __eq__(self, other):
        if not isinstance(other, TermGraph):
            return NotImplemented
        return self.signature == other.signature and self._states == other._states

    def __repr__(self):
        return f"TermGraph({len(self._states)} states)"


def validate(graph):
    """Return a list of human-readable problems, empty when well formed.

    Checks every state against the signature: known operation, atom and
    group arities, distinct bound atoms within a group, existing child
    states, and permitted labels.  Never raises; the other operations on
    graphs refuse to run until this list is empty.
    """
    if graph._problems is not None:
        return list(graph._problems)
    problems = []
    for name, node in graph.states.items():
        if node.op not in graph.signature:
            problems.append(f"state '{name}': unknown operation '{node.op}'")
            continue
        spec = graph.signature.op(node.op)
        if len(node.atoms) != spec.atom_arity:
            problems.append(
                f"state '{name}': expected {spec.atom_arity} atoms,"
                f" got {len(node.atoms)}"
            )
        for a in node.atoms:
            if not isinstance(a, int) or isinstance(a, bool) or a < 0:
                problems.append(
                    f"state '{name}': atom {a!r} is not a nonnegative integer"
                )
        if spec.labels is None:
            if node.label is not None:
                problems.append(
                    f"state '{name}': operation '{node.op}' takes no label"
                )
        elif node.label not in spec.labels:
            problems.append(
                f"state '{name}': label {node.label!r} not allowed for"
                f" '{node.op}'"
            )
        if len(node.groups) != len(spec.binder_groups):
            problems.append(
                f"state '{name}': expected {len(spec.binder_groups)} binder"
                f" groups, got {len(node.groups)}"
            )
            continue
        for i, ((bound, children), (bcount, ccount)) in enumerate(
            zip(node.groups, spec.binder_groups)
        ):
            if len(bound) != bcount:
                problems.append(
                    f"state '{name}': group {i} binds {len(bound)} atoms,"
                    f" expected {bcount}"
                )
            elif len(set(bound)) != len(bound):
                problems.append(f"state '{name}': group {i} binds an atom twice")
            for b in bound:
                if not isinstance(b, int) or isinstance(b, bool) or b < 0:
                    problems.append(
                        f"state '{name}': bound atom {b!r} is not a"
                        f" nonnegative integer"
                    )
            if len(children) != ccount:
                problems.append(
                    f"state '{name}': group {i} has {len(children)} children,"
                    f" expected {ccount}"
                )
            for c in children:
                if c not in graph.states:
                    problems.append(f"state '{name}': unknown child state '{c}'")
    graph._problems = tuple(problems)
    return problems


def _require_valid(graph):
    problems = validate(graph)
    if problems:
        raise ValueError(problems[0])


def _require_state(graph, state):
    if state not in graph.states:
        raise ValueError(f"unknown state '{state}'")


def unfold(graph, state, depth):
    """Truncate the tree denoted by ``state`` at ``depth`` node levels.

    Depth 0 is :data:`CUT`; depth ``k`` shows ``k`` levels of nodes with
    every pruned subtree replaced by :data:`CUT`.  Shared subtrees of the
    result may be the same object, which is safe because trees are
    immutable.
    """
    _require_valid(graph)
    _require_state(graph, state)
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    prev = {name: CUT for name in graph.states}
    for _ in range(depth):
        cur = {}
        for name, node in graph.states.items():
            groups = tuple(
                (bound, tuple(prev[c] for c in children))
                for bound, children in node.groups
            )
            cur[name] = TreeNode(node.op, node.atoms, groups, node.label)
        prev = cur
    return prev[state]


def _fv_map(graph):
    """Free atoms of every state, as the least fixpoint of the equations."""
    if graph._fv is not None:
        return graph._fv
    fv = {name: frozenset() for name in graph.states}
    changed = True
    while changed:
        changed = False
        for name, node in graph.states.items():
            acc = set(node.atoms)
            for bound, children in node.groups:
                below = set()
                for c in children:
                    below |= fv[c]
                acc |= below - set(bound)
            acc = frozenset(acc)
            if acc != fv[name]:
                fv[name] = acc
                changed = True
    graph._fv = fv
    return fv


def free_atoms(graph, state):
    """Atoms occurring free in the tree denoted by ``state``."""
    _require_valid(graph)
    _require_state(graph, state)
    return _fv_map(graph)[state]


def tree_free_atoms(tree):
    """Atoms occurring free in a finite tree; :data:`CUT` contributes none."""
    if tree is CUT:
        return frozenset()
    out = set(tree.atoms)
    for bound, children in tree.groups:
        below = set()
        for c in children:
            below |= tree_free_atoms(c)
        out |= below - set(bound)
    return frozenset(out)


def _check_pair(g1, s1, g2, s2):
    _require_valid(g1)
    _require_valid(g2)
    if g1.signature != g2.signature:
        raise ValueError("signature mismatch")
    _require_state(g1, s1)
    _require_state(g2, s2)


def raw_bisim(g1, s1, g2, s2):
    """Decide whether two states denote literally equal trees.

    Closes the set of reachable state pairs, demanding equal operations,
    labels, atoms and bound atoms at every pair.  The closure has at most
    ``|states1| * |states2|`` elements, so this terminates.
    """
    _check_pair(g1, s1, g2, s2)
    seen = {(s1, s2)}
    queue = deque([(s1, s2)])
    while queue:
        a, b = queue.popleft()
        na, nb = g1.states[a], g2.states[b]
        if na.op != nb.op or na.label != nb.label or na.atoms != nb.atoms:
            return False
        for (bound_a, kids_a), (bound_b, kids_b) in zip(na.groups, nb.groups):
            if bound_a != bound_b:
                return False
            for pair in zip(kids_a, kids_b):
                if pair not in seen:
                    seen.add(pair)
                    queue.append(pair)
    return True


class _AlphaSearch:
    """Shared machinery for the alpha-aware comparisons.

    A configuration is ``(state1, state2, rho)`` where ``rho`` is a finite
    injective renaming recording, for each atom free on the left at this
    point of the comparison, which atom it must equal on the right.  The
    root configuration carries the identity on the free atoms of both
    sides; binder groups overwrite ``rho`` on their bound atoms and drop
    captured entries, and each child keeps only the entries its own free
    atoms can still consult.  Restricting this way keeps the configuration
    space finite so the closure terminates.
    """

    def __init__(self, g1, s1, g2, s2):
        _check_pair(g1, s1, g2, s2)
        self.g1, self.g2 = g1, g2
        self.fv1 = _fv_map(g1)
        base = self.fv1[s1] | _fv_map(g2)[s2]
        rho = tuple(sorted((a, a) for a in base))
        self.root = (s1, s2, rho)

    def expand(self, config):
        """Child configurations, or ``None`` when the nodes disagree."""
        sa, sb, items = config
        na, nb = self.g1.states[sa], self.g2.states[sb]
        if na.op != nb.op or na.label != nb.label:
            return None
        rho = dict(items)
        for aa, ab in zip(na.atoms, nb.atoms):
            if rho.get(aa) != ab:
                return None
        out = []
        for (bound_a, kids_a), (bound_b, kids_b) in zip(na.groups, nb.groups):
            hide_a, hide_b = set(bound_a), set(bound_b)
            inner = {
                x: y for x, y in rho.items() if x not in hide_a and y not in hide_b
            }
            inner.update(zip(bound_a, bound_b))
            for ca, cb in zip(kids_a, kids_b):
                keep = self.fv1[ca]
                sub = tuple(sorted((x, y) for x, y in inner.items() if x in keep))
                out.append((ca, cb, sub))
        return out


def alpha_bisim(g1, s1, g2, s2):
    """Decide whether two states denote alpha-equivalent trees.

    Works like :func:`raw_bisim` but carries a renaming of free atoms in
    each configuration, so bound atoms may differ as long as corresponding
    binders align.  Terminates because only finitely many renamings over
    the atoms of the two graphs can arise.
    """
    search = _AlphaSearch(g1, s1, g2, s2)
    seen = {search.root}
    queue = deque([search.root])
    while queue:
        config = queue.popleft()
        children = search.expand(config)
        if children is None:
            return False
        for child in children:
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return True


def truncation_eq(g1, s1, g2, s2, depth):
    """Decide whether the depth-``depth`` truncations are alpha-equivalent.

    Explores configurations level by level: a disagreeing configuration at
    level ``L`` sits at tree depth ``L``, which the truncation exposes
    exactly when ``depth > L``.  The walk therefore stops at level
    ``depth`` — everything deeper is behind a :data:`CUT` — and equality
    holds iff no disagreement was found before that.  Large ``depth``
    values cost nothing extra once the configuration set is exhausted.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    search = _AlphaSearch(g1, s1, g2, s2)
    seen = {search.root}
    frontier = [search.root]
    level = 0
    while frontier and level < depth:
        next_frontier = []
        for config in frontier:
            children = search.expand(config)
            if children is None:
                return False
            for child in children:
                if child not in seen:
                    seen.add(child)
                    next_frontier.append(child)
        frontier = next_frontier
        level += 1
    return True


def tree_alpha_eq(t1, t2):
    """Alpha-equivalence of two finite trees, by direct recursion.

    The same renaming discipline as :func:`alpha_bisim`, but over tree
    nodes instead of graph configurations; :data:`CUT` only matches
    :data:`CUT`.  Useful as an executable specification for the graph
    procedures on truncations.
    """
    rho = {a: a for a in tree_free_atoms(t1) | tree_free_atoms(t2)}
    return _tree_alpha(t1, t2, rho)


def _tree_alpha(t1, t2, rho):
    if t1 is CUT or t2 is CUT:
        return t1 is t2
    if t1.op != t2.op or t1.label != t2.label:
        return False
    if len(t1.atoms) != len(t2.atoms) or len(t1.groups) != len(t2.groups):
        return False
    for aa, ab in zip(t1.atoms, t2.atoms):
        if rho.get(aa) != ab:
            return False
    for (bound_a, kids_a), (bound_b, kids_b) in zip(t1.groups, t2.groups):
        if len(bound_a) != len(bound_b) or len(kids_a) != len(kids_b):
            return False
        hide_a, hide_b = set(bound_a), set(bound_b)
        inner = {x: y for x, y in rho.items() if x not in hide_a and y not in hide_b}
        inner.update(zip(bound_a, bound_b))
        for ca, cb in zip(kids_a, kids_b):
            if not _tree_alpha(ca, cb, inner):
                return False
    return True


def act_graph(perm, graph):
    """Apply a finite permutation to every atom of every state."""
    states = {
        name: Node(
            node.op,
            tuple(apply(perm, a) for a in node.atoms),
            tuple(
                (tuple(apply(perm, b) for b in bound), children)
                for bound, children in node.groups
            ),
            node.label,
        )
        for name, node in graph.states.items()
    }
    return TermGraph(graph.signature, states)


def act_tree(perm, tree):
    """Apply a finite permutation to every atom of a finite tree."""
    if tree is CUT:
        return CUT
    return TreeNode(
        tree.op,
        tuple(apply(perm, a) for a in tree.atoms),
        tuple(
            (
                tuple(apply(perm, b) for b in bound),
                tuple(act_tree(perm, c) for c in children),
            )
            for bound, children in tree.groups
        ),
        tree.label,
    )


def render_tree(tree, ascii_cut=False):
    """Render a finite tree as an s-expression.

    Each node prints as ``(op atoms bound-atoms children ...)`` with the
    label, if any, fused onto the operation as ``op:label``.  Pruned
    subtrees print as ``⊥``, or ``_`` when ``ascii_cut`` is set.

    >>> t = TreeNode("lam", (), (((0,), (CUT,)),))
    >>> render_tree(t)
    '(lam 0 ⊥)'
    """
    cut = "_" if ascii_cut else "⊥"

    def go(t):
        if t is CUT:
            return cut
        head = t.op if t.label is None else f"{t.op}:{t.label}"
        parts = [head] + [str(a) for a in t.atoms]
        for bound, children in t.groups:
            parts.extend(str(b) for b in bound)
            parts.extend(go(c) for c in children)
        return "(" + " ".join(parts) + ")"

    return go(tree)


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            tokens.append(ch)
            i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()":
                j += 1
            tokens.append(text[i:j])
            i = j
    return tokens


def parse_tree(signature, text):
    """Parse the s-expression syntax of :func:`render_tree`.

    The signature supplies the arities, so the flat atom/bound/child
    spans inside each node can be split back apart.
    """
    tokens = _tokenize(text)
    tree, pos = _parse_node(signature, tokens, 0)
    if pos != len(tokens):
        raise ValueError(f"trailing input at token {pos}")
    return tree


def _parse_atom(tokens, pos, what):
    if pos >= len(tokens):
        raise ValueError("unexpected end of input")
    try:
        value = int(tokens[pos])
    except ValueError:
        raise ValueError(f"expected {what}, got {tokens[pos]!r}") from None
    if value < 0:
        raise ValueError(f"expected {what}, got {tokens[pos]!r}")
    return value, pos + 1


def _parse_node(signature, tokens, pos):
    if pos >= len(tokens):
        raise ValueError("unexpected end of input")
    token = tokens[pos]
    if token in ("⊥", "_"):
        return CUT, pos + 1
    if token != "(":
        raise ValueError(f"expected '(' or cut marker, got {token!r}")
    pos += 1
    if pos >= len(tokens):
        raise ValueError("unexpected end of input")
    head = tokens[pos]
    pos += 1
    op_name, _, label = head.partition(":")
    spec = signature.op(op_name)
    if label:
        if spec.labels is None or label not in spec.labels:
            raise ValueError(f"label {label!r} not allowed for '{op_name}'")
    else:
        label = None
        if spec.labels is not None:
            raise ValueError(f"operation '{op_name}' requires a label")
    atoms = []
    for _ in range(spec.atom_arity):
        a, pos = _parse_atom(tokens, pos, "an atom")
        atoms.append(a)
    groups = []
    for bound_count, child_count in spec.binder_groups:
        bound = []
        for _ in range(bound_count):
            b, pos = _parse_atom(tokens, pos, "a bound atom")
            bound.append(b)
        children = []
        for _ in range(child_count):
            child, pos = _parse_node(signature, tokens, pos)
            children.append(child)
        groups.append((tuple(bound), tuple(children)))
    if pos >= len(tokens) or tokens[pos] != ")":
        raise ValueError(f"expected ')' closing '{op_name}'")
    return TreeNode(op_name, tuple(atoms), tuple(groups), label), pos + 1


def signature_to_jsonable(signature):
    ops = []
    for spec in signature.ops:
        blob = {
            "name": spec.name,
            "atoms": spec.atom_arity,
            "groups": [
                {"bound": b, "children": c} for b, c in spec.binder_groups
            ],
        }
        if spec.labels is not None:
            blob["labels"] = sorted(spec.labels)
        ops.append(blob)
    return {"ops": ops}


def signature_from_jsonable(blob):
    ops = []
    for entry in blob["ops"]:
        labels = entry.get("labels")
        ops.append(
            OpSpec(
                entry["name"],
                entry["atoms"],
                tuple((g["bound"], g["children"]) for g in entry["groups"]),
                None if labels is None else frozenset(labels),
            )
        )
    return BindingSignature(ops)


def graph_to_jsonable(graph):
    if graph.signature == LAMBDA_SIG:
        sig = "lambda"
    else:
        sig = signature_to_jsonable(graph.signature)
    states = {}
    for name, node in graph.states.items():
        entry = {
            "op": node.op,
            "atoms": list(node.atoms),
            "groups": [
                {"bound_atoms": list(bound), "children": list(children)}
                for bound, children in node.groups
            ],
        }
        if node.label is not None:
            entry["label"] = node.label
        states[name] = entry
    return {"sig": sig, "states": states}


def graph_from_jsonable(blob):
    sig = blob["sig"]
    if isinstance(sig, str):
        if sig != "lambda":
            raise ValueError(f"unknown signature name '{sig}'")
        signature = LAMBDA_SIG
    else:
        signature = signature_from_jsonable(sig)
    states = {}
    for name, entry in blob["states"].items():
        states[name] = Node(
            entry["op"],
            tuple(entry["atoms"]),
            tuple(
                (tuple(g["bound_atoms"]), tuple(g["children"]))
                for g in entry["groups"]
            ),
            entry.get("label"),
        )
    return TermGraph(signature, states)
