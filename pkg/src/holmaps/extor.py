"""Ext_{Lambda_g}(V_g, Q) by brute-force minimal resolutions, the modules M_n
over polynomial rings, and the closed form they assemble into."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .algebra import graded_basis, mask_sign
from .errors import ConsistencyError, ParameterError, ResourceLimitError
from .jacobian import primitive_dim, vg_basis
from .linalg import RationalMatrix, RowEchelon, kernel_basis
from .specseq import m_of
from .symprod import CheckReport, exponent_vectors

MAX_GENUS = 3
MAX_L = 5


@dataclass
class ResolutionTable:
    genus: int
    betti: dict[tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.betti.get(key, 0)

    def entries(self) -> list[tuple[tuple[int, int], int]]:
        return sorted((k, v) for k, v in self.betti.items() if v)

    def restrict(self, max_l: int) -> "ResolutionTable":
        return ResolutionTable(self.genus, {k: v for k, v in self.betti.items() if k[0] <= max_l and v})


@dataclass
class FreeModuleStage:
    """Free Lambda_g-module on generators of the given internal degrees.

    ``images[a]`` is the image of generator ``a`` in the previous stage, as a
    vector over that stage's basis ``(generator, monomial mask)``.
    """

    degrees: list[int]
    images: list[dict[tuple[int, int], int]] = field(default_factory=list)

    def basis(self, ngens: int, d: int) -> list[tuple[int, int]]:
        out = []
        for a, m in enumerate(self.degrees):
            if 0 <= d - m <= ngens:
                out.extend((a, mono) for mono in graded_basis(ngens, d - m))
        return out

    def presentation(self, prev: "FreeModuleStage", ngens: int, d: int) -> RationalMatrix:
        """Matrix of the map to the previous stage in internal degree d."""
        src = self.basis(ngens, d)
        tgt = {b: r for r, b in enumerate(prev.basis(ngens, d))}
        rows: dict[int, dict[int, int]] = {}
        for c, (a, lam) in enumerate(src):
            for (b, mu), v in self.images[a].items():
                s = mask_sign(lam, mu)
                if s:
                    r = tgt[(b, lam | mu)]
                    rows.setdefault(r, {})[c] = rows.get(r, {}).get(c, 0) + s * v
        return RationalMatrix.from_rows(len(tgt), len(src), rows)


def _act(vec: dict, i: int) -> dict:
    """e_i times a vector over a free module basis ``(generator, mask)``."""
    bit = 1 << (i - 1)
    out = {}
    for (a, m), v in vec.items():
        s = mask_sign(bit, m)
        if s:
            out[(a, m | bit)] = out.get((a, m | bit), 0) + s * v
    return out


def _vec_from_kernel(basis, kv) -> dict:
    return {basis[c]: int(v) for c, v in enumerate(kv) if v}


def _minimal_generators(ngens: int, kernel: dict[int, list[dict]], max_internal: int) -> list[tuple[int, dict]]:
    """Pick a minimal generating set of a graded submodule, lowest degree first."""
    gens = []
    for d in range(max_internal + 1):
        kd = kernel.get(d, [])
        if not kd:
            continue
        keys = sorted({key for v in kd for key in v})
        below = kernel.get(d - 1, [])
        for v in below:
            for i in range(1, ngens + 1):
                keys.extend(k for k in _act(v, i) if k not in keys)
        pos = {key: n for n, key in enumerate(sorted(set(keys)))}
        ech = RowEchelon()
        for v in below:
            for i in range(1, ngens + 1):
                ech.insert({pos[k]: c for k, c in _act(v, i).items()})
        for v in kd:
            if ech.insert({pos[k]: c for k, c in v.items()}):
                gens.append((d, v))
    return gens


def _check_bounds(g, max_l):
    if not isinstance(g, int) or g < 1:
        raise ParameterError(f"genus must be a positive integer, got {g!r}")
    if max_l < 0:
        raise ParameterError("max_l must be >= 0")


def minimal_resolution(g: int, max_l: int, max_internal: int | None = None) -> ResolutionTable:
    """Graded Betti numbers of a minimal free resolution of V_g over Lambda_g."""
    _check_bounds(g, max_l)
    if g > MAX_GENUS or max_l > MAX_L:
        partial = _resolve(g, min(max_l, 2), max_internal)
        raise ResourceLimitError(f"minimal_resolution is limited to g <= {MAX_GENUS}, max_l <= {MAX_L}", partial)
    return _resolve(g, max_l, max_internal)


def _resolve(g: int, max_l: int, max_internal: int | None) -> ResolutionTable:
    n = 2 * g
    if max_internal is None:
        max_internal = 2 * g + 2 * max_l + 2
    table = ResolutionTable(g)
    vb = vg_basis(g)
    # stage 0: one generator in degree 0 onto V_g; its kernel is the ideal (f_g)
    stage = FreeModuleStage([0])
    table.betti[(0, 0)] = 1
    kernel: dict[int, list[dict]] = {}
    for d in range(max_internal + 1):
        basis = stage.basis(n, d)
        if not basis:
            continue
        rows: dict[int, dict[int, object]] = {}
        for c, (_, m) in enumerate(basis):
            for j, v in vb.reduce(d, {m: 1}).items():
                rows.setdefault(j, {})[c] = v
        mat = RationalMatrix.from_rows(vb.dim(d), len(basis), rows)
        kernel[d] = [_vec_from_kernel(basis, kv) for kv in kernel_basis(mat)]
    for l in range(1, max_l + 1):
        gens = _minimal_generators(n, kernel, max_internal)
        if not gens:
            break
        for d, v in gens:
            if any(key[1] == 0 for key in v):
                raise ConsistencyError(f"non-minimal generator at stage {l}, degree {d}")
            table.betti[(l, d)] = table.betti.get((l, d), 0) + 1
        new = FreeModuleStage([d for d, _ in gens], [v for _, v in gens])
        if l == max_l:
            break
        kernel = {}
        for d in range(max_internal + 1):
            basis = new.basis(n, d)
            if not basis:
                continue
            mat = new.presentation(stage, n, d)
            kernel[d] = [_vec_from_kernel(basis, kv) for kv in kernel_basis(mat)]
        stage = new
    return table


# ---------------------------------------------------------------------------
# The modules M_n over R_n = Q[h_1, ..., h_{2n}], each h_i of internal degree 2
# ---------------------------------------------------------------------------

@dataclass
class MnModule:
    n: int
    dims: dict[int, int]
    c_n: int

    def __getitem__(self, d: int) -> int:
        return self.dims.get(d, 0)


def poly_ring_dim(nvars: int, d: int) -> int:
    """Dimension of the internal-degree-d part of a polynomial ring on degree-2 variables."""
    if d < 0 or d % 2:
        return 0
    return comb(d // 2 + nvars - 1, nvars - 1)


def _mn_recursion(n: int, max_internal: int) -> list[dict[int, int]]:
    # index t holds the dims of M_{t+1}
    tower = [{d: (d // 2 + 1 if d >= 2 and d % 2 == 0 else 0) for d in range(max_internal + 1)}]
    for t in range(1, n):
        prev = tower[-1]
        c = prev.get(2 * t, 0)
        cur = {}
        for d in range(max_internal + 1):
            v = c * poly_ring_dim(2 * t + 2, d - 2 * t) - prev.get(d, 0)
            if v < 0:
                raise ConsistencyError(f"negative dimension {v} for M_{t + 1} in degree {d}")
            cur[d] = v
        tower.append(cur)
    return tower


class _PolyModule:
    """A graded submodule of a free R_m-module, stored degree by degree.

    Free basis elements are pairs (generator, exponent tuple); generator ``a``
    sits in internal degree ``gen_degree``.
    """

    def __init__(self, nvars: int, ngens: int, gen_degree: int):
        self.nvars, self.ngens, self.gen_degree = nvars, ngens, gen_degree
        self.parts: dict[int, list[dict]] = {}

    def ambient(self, d: int) -> list[tuple[int, tuple[int, ...]]]:
        q = d - self.gen_degree
        if q < 0 or q % 2:
            return []
        return [(a, e) for a in range(self.ngens) for e in exponent_vectors(self.nvars, q // 2)]


def _times(vec: dict, i: int) -> dict:
    out = {}
    for (a, e), v in vec.items():
        e2 = list(e)
        e2[i] += 1
        out[(a, tuple(e2))] = v
    return out


def _pad(vec: dict, extra: int) -> dict:
    return {(a, e + (0,) * extra): v for (a, e), v in vec.items()}


def _brute_tower(n: int, max_internal: int) -> list[_PolyModule]:
    """M_1, ..., M_n as explicit submodules by iterated kernels."""
    m1 = _PolyModule(2, 1, 0)
    for d in range(2, max_internal + 1, 2):
        m1.parts[d] = [{(0, e): 1} for e in exponent_vectors(2, d // 2)]
    tower = [m1]
    for t in range(1, n):
        prev = tower[-1]
        gens = prev.parts.get(2 * t, [])
        # the generators of M_t all sit in degree 2t; lift them to R_{t+1}
        lifted = [_pad(v, 2) for v in gens]
        nv = 2 * t + 2
        new = _PolyModule(nv, len(gens), 2 * t)
        for d in range(2 * t, max_internal + 1, 2):
            src = new.ambient(d)
            tgt_keys = {}
            rows: dict[int, dict[int, int]] = {}
            for c, (a, e) in enumerate(src):
                if e[-1] or e[-2]:
                    continue  # the two new variables act by zero on M_t
                img = lifted[a]
                for (b, f), v in img.items():
                    key = (b, tuple(x + y for x, y in zip(e, f)))
                    r = tgt_keys.setdefault(key, len(tgt_keys))
                    rows.setdefault(r, {})[c] = rows.get(r, {}).get(c, 0) + v
            mat = RationalMatrix.from_rows(len(tgt_keys), len(src), rows)
            new.parts[d] = [{src[c]: int(x) for c, x in enumerate(kv) if x} for kv in kernel_basis(mat)]
        tower.append(new)
    return tower


def mn_dims(n: int, max_internal: int, validate: bool | None = None) -> MnModule:
    """Graded dimensions of M_n; the recursion is checked against explicit kernels for n <= 3."""
    if n < 1:
        raise ParameterError("n must be >= 1")
    if max_internal < 0:
        raise ParameterError("max_internal must be >= 0")
    bound = max(max_internal, 2 * n)
    tower = _mn_recursion(n, bound)
    if validate is None:
        validate = n <= 3
    if validate:
        brute = _brute_tower(n, min(bound, 2 * n + 8))
        for t, mod in enumerate(brute):
            for d, vecs in mod.parts.items():
                if len(vecs) != tower[t].get(d, 0):
                    raise ConsistencyError(
                        f"M_{t + 1} in degree {d}: recursion {tower[t].get(d, 0)} vs kernel {len(vecs)}")
    dims = {d: v for d, v in tower[-1].items() if v and d <= max_internal}
    return MnModule(n, dims, tower[-1].get(2 * n, 0))


def mn_koszul_ext(n: int, max_internal: int) -> dict[tuple[int, int], int]:
    """dim Ext^{i,j}_{R_n}(M_n, Q) for j <= max_internal, via the Koszul complex M_n (x) Lambda(y_1..y_{2n})."""
    mod = _brute_tower(n, max_internal)[-1]
    nv = mod.nvars

    def part(d, i):
        # basis of M_{d - 2i} (x) Lambda^i as (vector, subset)
        return [(v, S) for v in mod.parts.get(d - 2 * i, []) for S in combinations(range(nv), i)]

    def dvec(v, S):
        out = {}
        for pos, s in enumerate(S):
            rest = S[:pos] + S[pos + 1:]
            sign = -1 if pos % 2 else 1
            for key, c in _times(v, s).items():
                k2 = (key, rest)
                out[k2] = out.get(k2, 0) + sign * c
        return out

    def rank_of(d, i):
        if i <= 0:
            return 0
        vecs = [dvec(v, S) for v, S in part(d, i)]
        keys = {}
        ech = RowEchelon()
        for vec in vecs:
            ech.insert({keys.setdefault(k, len(keys)): c for k, c in vec.items()})
        return ech.rank

    out = {}
    for d in range(0, max_internal + 1, 2):
        for i in range(0, nv + 1):
            dim = len(part(d, i))
            if not dim:
                continue
            h = dim - rank_of(d, i) - rank_of(d, i + 1)
            if h:
                out[(i, d)] = h
    return out


def mn_ext_concentration(n: int, max_internal: int) -> CheckReport:
    """Ext of M_n is nonzero only at j = 2n + 2i."""
    ext = mn_koszul_ext(n, max_internal)
    bad = sorted(key for key in ext if key[1] != 2 * n + 2 * key[0])
    return CheckReport(not bad, bad[0][1] if bad else None, {"ext": ext})


# ---------------------------------------------------------------------------
# Closed form and Tor vanishing
# ---------------------------------------------------------------------------

def ext_vg_closed(g: int, max_l: int) -> ResolutionTable:
    """1 at (0,0), 1 at (1,2), and dim (M_g)_{2(g+l-2)} at (l, g+l) for l >= 2."""
    _check_bounds(g, max_l)
    t = ResolutionTable(g)
    t.betti[(0, 0)] = 1
    if max_l >= 1:
        t.betti[(1, 2)] = 1
    if max_l >= 2:
        mod = mn_dims(g, 2 * (g + max_l - 2), validate=False)
        for l in range(2, max_l + 1):
            v = mod[2 * (g + l - 2)]
            if v:
                t.betti[(l, g + l)] = v
    return t


def pbar_kernel_dims(g: int) -> dict[int, int]:
    """Degreewise dimension of the kernel of K_g / f_g K_g -> V_g, where K_g = ker(Lambda_g -> Lambda_{g-1})."""
    if g < 2:
        raise ParameterError("needs g >= 2")
    n = 2 * g
    top = 0b11 << (n - 2)
    vb = vg_basis(g)
    f = [0b11 << (2 * t) for t in range(g)]
    out = {}
    for d in range(n + 1):
        kd = [m for m in graded_basis(n, d) if m & top]
        if not kd:
            continue
        # f * K_{d-2}, inside Lambda_d
        ech = RowEchelon()
        pos = {m: i for i, m in enumerate(graded_basis(n, d))}
        for m in (m for m in graded_basis(n, d - 2) if m & top) if d >= 2 else ():
            row = {}
            for a in f:
                s = mask_sign(a, m)
                if s:
                    row[pos[a | m]] = row.get(pos[a | m], 0) + s
            ech.insert(row)
        quotient = len(kd) - ech.rank
        # image of K_d in V_d
        img = RowEchelon()
        for m in kd:
            img.insert(vb.reduce(d, {m: 1}))
        expected_image = primitive_dim(g, d) - primitive_dim(g - 1, d)
        if img.rank != expected_image:
            raise ConsistencyError(f"image of K_{g} in degree {d} is not N_{g}")
        k = quotient - img.rank
        if k:
            out[d] = k
    return out


def tor_vanishing_check(g: int, max_l: int) -> CheckReport:
    table = minimal_resolution(g, max_l)
    bad = sorted(key for key, v in table.betti.items() if v and key[1] != m_of(g, key[0]))
    detail = {"betti": table.entries()}
    ok = not bad
    if g >= 2:
        kd = pbar_kernel_dims(g)
        detail["pbar_kernel"] = kd
        if kd != {g + 1: primitive_dim(g - 1, g - 1)}:
            ok = False
    return CheckReport(ok, bad[0][0] if bad else None, detail)
