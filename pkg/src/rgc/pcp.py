"""Post correspondence problem instances and their encoding as a constraint graph.

``build_reduction(inst)`` produces a graph G such that some corresponder
graph maps homomorphically into G iff the instance has a solution.  The
forward direction is constructive (:func:`witness_from_solution`), the
backward direction decodes a solution from the images of the even C-nodes
(:func:`solution_from_witness`).

Node naming in G: ``c<i>`` summarise C-nodes; ``a<i>_<j>_<alpha>`` stand for
position j of the doubled v_i spine (U-nodes), ``b<i>_<j>_<alpha>`` for the
w_i spine (L-nodes).  ``alpha = 1`` marks positions where a word starts on
the other side of the correspondence.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import accumulate, product
from typing import Mapping, Sequence

from .families import CorresponderParams, gen_cg, iter_cg_params
from .graph import NULL, ROOT, Graph, validate
from .hom import Homomorphism, find_hom


class PcpError(ValueError):
    pass


@dataclass(frozen=True)
class PcpInstance:
    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        pairs = tuple((str(v), str(w)) for v, w in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise PcpError("a PCP instance needs at least one pair")
        for v, w in pairs:
            if not v or not w:
                raise PcpError("PCP words must be nonempty")

    @property
    def m(self) -> int:
        return len(self.pairs)

    def top(self, seq: Sequence[int]) -> str:
        return "".join(self.pairs[t][0] for t in seq)

    def bottom(self, seq: Sequence[int]) -> str:
        return "".join(self.pairs[t][1] for t in seq)

    def is_solution(self, seq: Sequence[int]) -> bool:
        return (
            len(seq) > 0
            and all(0 <= t < self.m for t in seq)
            and self.top(seq) == self.bottom(seq)
        )

    def padded(self) -> "PcpInstance":
        """At least two pairs, duplicating the only pair if necessary."""
        return self if self.m >= 2 else PcpInstance(self.pairs * 2)


def parse_pcp(text: str) -> PcpInstance:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "pair" or len(parts) != 3:
            raise PcpError(f"line {lineno}: expected 'pair <v> <w>'")
        pairs.append((parts[1], parts[2]))
    return PcpInstance(tuple(pairs))


def format_pcp(inst: PcpInstance) -> str:
    return "".join(f"pair {v} {w}\n" for v, w in inst.pairs)


def brute_solve_pcp(inst: PcpInstance, max_len: int) -> list[int] | None:
    """Shortest solution of length <= ``max_len``, lexicographically least
    among the shortest.

    Breadth-first over index sequences in lexicographic order; a prefix is
    kept only while one concatenation is a prefix of the other.
    """
    if max_len < 1:
        raise PcpError("max_len must be at least 1")
    level: list[tuple[int, ...]] = [()]
    for _ in range(max_len):
        nxt = []
        for seq in level:
            for t in range(inst.m):
                s = seq + (t,)
                top, bot = inst.top(s), inst.bottom(s)
                if top == bot:
                    return list(s)
                if top.startswith(bot) or bot.startswith(top):
                    nxt.append(s)
        level = nxt
    return None


# -- the reduction graph ----------------------------------------------------


def c_id(i: int) -> str:
    return f"c{i}"


def a_id(i: int, j: int, alpha: int) -> str:
    return f"a{i}_{j}_{alpha}"


def b_id(i: int, j: int, alpha: int) -> str:
    return f"b{i}_{j}_{alpha}"


def build_reduction(inst: PcpInstance) -> Graph:
    inst = inst.padded()
    m = inst.m
    v = [p[0] for p in inst.pairs]
    w = [p[1] for p in inst.pairs]
    p = [len(x) for x in v]
    q = [len(x) for x in w]

    nodes = [c_id(i) for i in range(2 * m)]
    for i in range(m):
        nodes += [a_id(i, j, 0) for j in range(2 * p[i])]
        nodes += [b_id(i, j, 0) for j in range(2 * q[i])]
        nodes += [b_id(i, 2 * j, 1) for j in range(q[i])]
        nodes += [a_id(i, 2 * j + 1, 1) for j in range(p[i])]

    s1: list[tuple[str, str]] = []
    for i in range(m):
        s1.append((ROOT, c_id(2 * i)))
        s1.append((c_id(2 * i), c_id(2 * i + 1)))
        s1 += [(c_id(2 * i + 1), c_id(2 * j)) for j in range(m)]
        s1.append((c_id(2 * i + 1), NULL))
    for i in range(m):
        for alpha in (0, 1):
            s1 += [(a_id(i, 2 * j, 0), a_id(i, 2 * j + 1, alpha)) for j in range(p[i])]
            s1 += [(a_id(i, 2 * j + 1, alpha), a_id(i, 2 * j + 2, 0)) for j in range(p[i] - 1)]
            last = a_id(i, 2 * p[i] - 1, alpha)
            s1 += [(last, a_id(j, 0, 0)) for j in range(m)]
            s1.append((last, NULL))
            s1 += [(b_id(i, 2 * j, alpha), b_id(i, 2 * j + 1, 0)) for j in range(q[i])]
            s1 += [(b_id(i, 2 * j + 1, 0), b_id(i, 2 * j + 2, alpha)) for j in range(q[i] - 1)]
            s1 += [(b_id(i, 2 * q[i] - 1, 0), b_id(j, 0, alpha)) for j in range(m)]
        s1.append((b_id(i, 2 * q[i] - 1, 0), NULL))

    s2: list[tuple[str, str]] = [(ROOT, NULL)]
    for i in range(m):
        s2.append((c_id(2 * i), a_id(i, 0, 0)))
        s2.append((c_id(2 * i + 1), b_id(i, 1, 0)))
    for i, k in product(range(m), repeat=2):
        for l in range(q[k]):
            if v[i][0] == w[k][l]:
                s2.append((a_id(i, 0, 0), b_id(k, 2 * l, 1)))
            for j in range(1, p[i]):
                if v[i][j] == w[k][l]:
                    s2.append((a_id(i, 2 * j, 0), b_id(k, 2 * l, 0)))
        for j in range(p[i]):
            # The first odd b-node of w_k links to start-marked a-nodes: the
            # letter compared is w_k's first one.
            if v[i][j] == w[k][0]:
                s2.append((b_id(k, 1, 0), a_id(i, 2 * j + 1, 1)))
            for l in range(1, q[k]):
                if v[i][j] == w[k][l]:
                    s2.append((b_id(k, 2 * l + 1, 0), a_id(i, 2 * j + 1, 0)))
    for k in range(m):
        for l in range(q[k]):
            s2.append((b_id(k, 2 * l, 0), NULL))
            s2.append((b_id(k, 2 * l, 1), ROOT))
    for i in range(m):
        for j in range(p[i]):
            s2.append((a_id(i, 2 * j + 1, 0), NULL))
            s2.append((a_id(i, 2 * j + 1, 1), ROOT))
    return validate(nodes, s1, s2)


# -- witnesses in both directions ---------------------------------------------


def _normalize_solution(inst: PcpInstance, sol: Sequence[int]) -> list[int]:
    if not inst.is_solution(sol):
        raise PcpError(f"{list(sol)} is not a solution of the instance")
    sol = list(sol)
    # Corresponder graphs need k >= 2; a solution repeated is still one.
    return sol * 2 if len(sol) == 1 else sol


def params_from_solution(inst: PcpInstance, sol: Sequence[int]) -> CorresponderParams:
    sol = _normalize_solution(inst, sol)
    vlen = [len(inst.pairs[t][0]) for t in sol]
    wlen = [len(inst.pairs[t][1]) for t in sol]
    u = list(accumulate(vlen))
    l = list(accumulate(wlen))
    return CorresponderParams(n=u[-1], k=len(sol), u=tuple(u[:-1]), l=tuple(l[:-1]))


def _block(starts: Sequence[int], f: int) -> int:
    """Largest i with starts[i] <= f."""
    i = 0
    while i + 1 < len(starts) and starts[i + 1] <= f:
        i += 1
    return i


def witness_from_solution(
    inst: PcpInstance, sol: Sequence[int]
) -> tuple[CorresponderParams, Graph, Homomorphism]:
    """The corresponder graph of a solution and its homomorphism into the
    reduction graph.

    Column f of the corresponder graph is letter f of the common string.
    U-nodes of column f map to the v-word covering f (block ``i = d_u(f)``),
    L-nodes to the w-word covering f (block ``d_l(f)``), each at the offset
    of f inside its word.  The alpha flag on an odd U-image records whether
    a w-word starts at f; on an even L-image whether a v-word starts at f.
    """
    sol = _normalize_solution(inst, sol)
    params = params_from_solution(inst, sol)
    cg = gen_cg(params)
    us, ls = params.u_all, params.l_all
    h: Homomorphism = {ROOT: ROOT, NULL: NULL}
    for j, t in enumerate(sol):
        h[f"C{2 * j}"] = c_id(2 * t)
        h[f"C{2 * j + 1}"] = c_id(2 * t + 1)
    for f in range(params.n):
        iu = _block(us, f)
        il = _block(ls, f)
        off_u = f - us[iu]
        off_l = f - ls[il]
        h[f"U{2 * f}"] = a_id(sol[iu], 2 * off_u, 0)
        h[f"U{2 * f + 1}"] = a_id(sol[iu], 2 * off_u + 1, int(f in ls))
        h[f"L{2 * f}"] = b_id(sol[il], 2 * off_l, int(f in us))
        h[f"L{2 * f + 1}"] = b_id(sol[il], 2 * off_l + 1, 0)
    return params, cg, h


def solution_from_witness(
    inst: PcpInstance, cg: Graph, h: Mapping[str, str]
) -> list[int]:
    """Read ``t_j`` off ``h(C_2j) = c_(2 t_j)`` and re-verify it.

    Indices of pairs added by padding a one-pair instance map back to 0.
    """
    k2 = sum(1 for x in cg.nodes if x.startswith("C") and x[1:].isdigit())
    if k2 == 0 or k2 % 2:
        raise PcpError("not a corresponder graph: C-spine must have an even positive length")
    sol = []
    for j in range(k2 // 2):
        img = h.get(f"C{2 * j}", "")
        if not (img.startswith("c") and img[1:].isdigit() and int(img[1:]) % 2 == 0):
            raise PcpError(f"C{2 * j} maps to {img!r}, not an even c-node")
        sol.append((int(img[1:]) // 2) % inst.m)
    if not inst.is_solution(sol):
        raise PcpError(f"decoded sequence {sol} is not a solution")
    return sol


def _search_n(inst: PcpInstance, n: int, k_max: int):
    g = build_reduction(inst)
    for p in iter_cg_params(n, k_max, n_min=n):
        h = find_hom(gen_cg(p), g)
        if h is not None:
            return p, h
    return None


def bounded_cg_search(
    inst: PcpInstance, n_max: int, k_max: int, *, workers: int = 1
) -> tuple[CorresponderParams, Homomorphism] | None:
    """First corresponder graph (ascending n, k, then (u, l)) with a
    homomorphism into the reduction graph.  With several workers the
    parameter space is split by n; the smallest hit is returned."""
    if n_max < 2 or k_max < 2:
        raise PcpError("n_max and k_max must be at least 2")
    ns = range(2, n_max + 1)
    if workers <= 1:
        for n in ns:
            hit = _search_n(inst, n, k_max)
            if hit is not None:
                return hit
        return None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for hit in pool.map(_search_n, [inst] * len(ns), ns, [k_max] * len(ns)):
            if hit is not None:
                return hit
    return None
