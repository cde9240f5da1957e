"""Exhaustive small-module universes and sweep instance generators.

Enumerates every nilpotent relation-satisfying representation up to
isomorphism for small dimension vectors by orbit reduction under the
change-of-basis action, and builds the deterministic instance families
used by the verification suites.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache

import numpy as np

from cy2stab import pimod
from cy2stab.kcharge import CentralCharge, ExactComplex

__all__ = [
    "enumerate_raw_modules",
    "enumerate_iso_classes",
    "random_module",
    "standard_region_charges",
    "twist_lemma_instances",
]


_general_linear = pimod.general_linear


def _transform_batch(
    A: np.ndarray, left: np.ndarray, right_inv: np.ndarray, p: int
) -> np.ndarray:
    """left[g] @ A @ right_inv[g] for every group element g."""
    if A.size == 0:
        g = left.shape[0]
        return np.broadcast_to(A, (g,) + A.shape)
    return np.einsum("gij,jk,gkl->gil", left, A, right_inv) % p


def _b_solution_space(
    A1: np.ndarray, A2: np.ndarray, p: int
) -> np.ndarray:
    """Basis (rows) of the (B1, B2) solutions of both relations.

    Row-major vec identities: vec(A X) = (A kron I) vec(X) and
    vec(X A) = (I kron A^T) vec(X).
    """
    d1, d0 = A1.shape
    if d0 == 0 or d1 == 0:
        return np.zeros((0, 2 * d0 * d1), dtype=np.int64)
    i0 = np.eye(d0, dtype=np.int64)
    i1 = np.eye(d1, dtype=np.int64)
    top = np.hstack([np.kron(A1, i1), np.kron(A2, i1)])
    bot = np.hstack([np.kron(i0, A1.T), np.kron(i0, A2.T)])
    system = np.vstack([top, bot]) % p
    return pimod.nullspace(system, p)


@lru_cache(maxsize=None)
def _coeff_grid(k: int, p: int) -> np.ndarray:
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)


def _raw_arrays(p: int, dims: tuple[int, int]):
    """Yield (A1, A2, B1, B2) for every relation-satisfying tuple."""
    d0, d1 = dims
    na = d1 * d0
    if na == 0:
        z_a = np.zeros((d1, d0), dtype=np.int64)
        z_b = np.zeros((d0, d1), dtype=np.int64)
        yield (z_a, z_a.copy(), z_b, z_b.copy())
        return
    for a_entries in itertools.product(range(p), repeat=2 * na):
        A1 = np.array(a_entries[:na], dtype=np.int64).reshape(d1, d0)
        A2 = np.array(a_entries[na:], dtype=np.int64).reshape(d1, d0)
        basis = _b_solution_space(A1, A2, p)
        k = basis.shape[0]
        vecs = (_coeff_grid(k, p) @ basis) % p if k else np.zeros(
            (1, 2 * d0 * d1), dtype=np.int64
        )
        for vec in vecs:
            B1 = vec[: d0 * d1].reshape(d0, d1)
            B2 = vec[d0 * d1 :].reshape(d0, d1)
            yield (A1, A2, B1, B2)


def enumerate_raw_modules(p: int, dims: tuple[int, int]):
    """Yield every relation-satisfying nilpotent module with these dims."""
    for A1, A2, B1, B2 in _raw_arrays(p, dims):
        try:
            yield pimod.PiModule(p, A1, A2, B1, B2)
        except pimod.InvalidModule:
            continue


def _orbit_keys(
    arrays: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray],
    dims: tuple[int, int],
    p: int,
) -> list[tuple]:
    """Keys of the full change-of-basis orbit of one arrow tuple."""
    a1, a2, b1, b2 = arrays
    d0, d1 = dims
    g0, g0inv = _general_linear(d0, p)
    g1, g1inv = _general_linear(d1, p)
    n0, n1 = g0.shape[0], g1.shape[0]
    keys = []
    for i in range(n1):
        q = np.broadcast_to(g1[i], (n0,) + g1[i].shape)
        qinv = np.broadcast_to(g1inv[i], (n0,) + g1inv[i].shape)
        a1_all = _transform_batch(a1, q, g0inv, p)
        a2_all = _transform_batch(a2, q, g0inv, p)
        b1_all = _transform_batch(b1, g0, qinv, p)
        b2_all = _transform_batch(b2, g0, qinv, p)
        for j in range(n0):
            keys.append(
                (
                    a1_all[j].tobytes(),
                    a2_all[j].tobytes(),
                    b1_all[j].tobytes(),
                    b2_all[j].tobytes(),
                )
            )
    return keys


def _nilpotent_arrays(arrays, dims, p: int) -> bool:
    a1, a2, b1, b2 = arrays
    d0, d1 = dims
    u0 = np.eye(d0, dtype=np.int64)
    u1 = np.eye(d1, dtype=np.int64)
    for _ in range(d0 + d1 + 1):
        if u0.shape[0] == 0 and u1.shape[0] == 0:
            return True
        n1 = np.vstack([(u0 @ a1.T) % p, (u0 @ a2.T) % p])
        n0 = np.vstack([(u1 @ b1.T) % p, (u1 @ b2.T) % p])
        u0 = pimod.rref(n0, p)[0] if n0.size else np.zeros((0, d0), dtype=np.int64)
        u1 = pimod.rref(n1, p)[0] if n1.size else np.zeros((0, d1), dtype=np.int64)
    return u0.shape[0] == 0 and u1.shape[0] == 0


_ISO_CACHE: dict[tuple, list] = {}


def enumerate_iso_classes(p: int, max_dims: tuple[int, int]) -> list:
    """All iso classes of modules with d0 <= max_dims[0], d1 <= max_dims[1].

    Exhaustive: raw enumeration plus orbit reduction.  Nilpotency is an
    isomorphism invariant, so it is decided once per orbit;
    representatives are the minimal orbit keys, making the output order
    deterministic.
    """
    cache_key = (p, max_dims)
    if cache_key in _ISO_CACHE:
        return _ISO_CACHE[cache_key]
    out = []
    for d0 in range(max_dims[0] + 1):
        for d1 in range(max_dims[1] + 1):
            dims = (d0, d1)
            seen: set[tuple] = set()
            reps = []
            for arrays in _raw_arrays(p, dims):
                k = tuple(m.tobytes() for m in arrays)
                if k in seen:
                    continue
                orbit = _orbit_keys(arrays, dims, p)
                seen.update(orbit)
                if not _nilpotent_arrays(arrays, dims, p):
                    continue
                canonical = min(orbit)
                a1 = np.frombuffer(canonical[0], dtype=np.int64).reshape(d1, d0)
                a2 = np.frombuffer(canonical[1], dtype=np.int64).reshape(d1, d0)
                b1 = np.frombuffer(canonical[2], dtype=np.int64).reshape(d0, d1)
                b2 = np.frombuffer(canonical[3], dtype=np.int64).reshape(d0, d1)
                reps.append(pimod.PiModule(p, a1, a2, b1, b2))
            reps.sort(key=lambda m: m.key())
            out.extend(reps)
    _ISO_CACHE[cache_key] = out
    return out


def random_module(
    p: int, dims: tuple[int, int], rng: random.Random, tries: int = 200
) -> pimod.PiModule:
    """Random relation-satisfying nilpotent module of the given dims."""
    d0, d1 = dims
    for _ in range(tries):
        A1 = np.array(
            [rng.randrange(p) for _ in range(d0 * d1)], dtype=np.int64
        ).reshape(d1, d0)
        A2 = np.array(
            [rng.randrange(p) for _ in range(d0 * d1)], dtype=np.int64
        ).reshape(d1, d0)
        basis = _b_solution_space(A1, A2, p)
        k = basis.shape[0]
        coeffs = np.array([rng.randrange(p) for _ in range(k)], dtype=np.int64)
        vec = np.tensordot(coeffs, basis, axes=1) % p if k else np.zeros(
            2 * d0 * d1, dtype=np.int64
        )
        B1 = vec[: d0 * d1].reshape(d0, d1)
        B2 = vec[d0 * d1 :].reshape(d0, d1)
        try:
            return pimod.PiModule(p, A1, A2, B1, B2)
        except pimod.InvalidModule:
            continue
    raise pimod.InvalidModule(f"no nilpotent module found at dims {dims}")


def standard_region_charges(count: int, rng: random.Random) -> list[CentralCharge]:
    """Deterministic exact charges with both simple classes strictly upper."""
    out = []
    while len(out) < count:
        a = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        b = Fraction(rng.randint(1, 6), rng.randint(1, 3))
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        d = Fraction(rng.randint(1, 6), rng.randint(1, 3))
        z_oz = ExactComplex.of(a, b)
        z_ox = ExactComplex.of(a + c, b + d)
        charge = CentralCharge(z_oz, z_ox)
        if charge.is_standard_region():
            out.append(charge)
    return out


def _charge_with_top(e_vertex: int, c: Fraction, w: ExactComplex) -> CentralCharge:
    """Charge sending the chosen simple to -c < 0 and the other to w (upper)."""
    minus_c = ExactComplex.of(-c, 0)
    if e_vertex == 1:
        z_oz = minus_c  # Z(S_1) = Z(O_Z)
        z_ox = w + z_oz  # Z(S_0) = Z(-1,1) = z_Ox - z_OZ = w
    else:
        z_oz = w
        z_ox = minus_c + z_oz
    return CentralCharge(z_oz, z_ox)


def twist_lemma_instances(p: int, seed: int = 0, minimum: int = 20):
    """Deterministic (Z, E, F, universe) instances satisfying the hypotheses.

    E runs over the simples placed at the window top by the charge; F runs
    over the small universe filtered to objects with every semistable
    factor strictly inside the window.
    """
    from cy2stab import heartlab

    rng = random.Random(seed)
    cat = pimod.PiOracle(p)
    universe = [M for M in enumerate_iso_classes(p, (2, 2)) if not M.is_zero()]
    tops = [Fraction(1), Fraction(2), Fraction(1, 2)]
    others = [
        ExactComplex.of(0, 1),
        ExactComplex.of(1, 1),
        ExactComplex.of(-1, 2),
        ExactComplex.of(Fraction(1, 2), Fraction(3, 2)),
    ]
    instances = []
    for c in tops:
        for w in others:
            for vertex in (0, 1):
                Z = _charge_with_top(vertex, c, w)
                E = pimod.simple(vertex, p)
                for F in universe:
                    try:
                        filt = heartlab.hn_filter(cat, Z, F)
                    except heartlab.ChargeDegenerate:
                        continue
                    if not all(k.branch == 2 for k in filt.phases()):
                        continue
                    instances.append((Z, E, F, universe))
    if len(instances) < minimum:
        raise RuntimeError("could not generate enough twist-lemma instances")
    rng.shuffle(instances)
    return instances
