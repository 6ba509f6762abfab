"""Vectorized GF(p) kernels for the exhaustive census.

A cubic over GF(p) is encoded as the integer sum_m c_m p^m, with m running over
``monomials(d, 3)``. Its symmetric tensor T[i, j, k] holds the coefficient of the
monomial x_i x_j x_k, which is also the value of phi on that monomial.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import List, Tuple

import numpy as np

from src.polyspace import monomials

logger = logging.getLogger("wlp-gamma")
logger.setLevel(logging.INFO)


@dataclass(frozen=True)
class Tables:
    """Index tables for one ambient dimension."""
    d: int
    cubic: np.ndarray          # (N, d) exponents of monomials(d, 3)
    tensor_index: np.ndarray   # (d, d, d) monomial index of x_i x_j x_k
    contraction: np.ndarray    # (d, N2) monomial index of x_i * m2
    top_words: np.ndarray      # (d^h, h)
    bottom_words: np.ndarray   # (d^(d-h), d-h)
    top_columns: np.ndarray    # (nS, h)
    bottom_columns: np.ndarray  # (nS, d-h)
    laplace_sign: np.ndarray   # (nS,)
    word_content: np.ndarray   # (d^d, nD) 0/1, word -> divided monomial of degree d
    degree_d: Tuple[Tuple[int, ...], ...]


@lru_cache(maxsize=None)
def tables(d: int) -> Tables:
    cubic = monomials(d, 3)
    index = {e: m for m, e in enumerate(cubic)}
    tensor_index = np.zeros((d, d, d), dtype=np.int64)
    for i, j, k in product(range(d), repeat=3):
        e = [0] * d
        for v in (i, j, k):
            e[v] += 1
        tensor_index[i, j, k] = index[tuple(e)]
    quadratic = monomials(d, 2)
    contraction = np.zeros((d, len(quadratic)), dtype=np.int64)
    for i in range(d):
        for m, e in enumerate(quadratic):
            f = list(e)
            f[i] += 1
            contraction[i, m] = index[tuple(f)]
    h = d // 2
    top_words = np.array(list(product(range(d), repeat=h)), dtype=np.int64).reshape(-1, h)
    bottom_words = np.array(list(product(range(d), repeat=d - h)), dtype=np.int64).reshape(-1, d - h)
    top_columns = [list(S) for S in combinations(range(d), h)]
    bottom_columns = [[c for c in range(d) if c not in S] for S in top_columns]
    signs = [(-1) ** (h * (h + 1) // 2 + h + sum(S)) for S in top_columns]
    degree_d = monomials(d, d)
    content = {e: m for m, e in enumerate(degree_d)}
    word_content = np.zeros((len(top_words) * len(bottom_words), len(degree_d)), dtype=np.int64)
    for t, top in enumerate(top_words):
        for u, bottom in enumerate(bottom_words):
            e = [0] * d
            for v in list(top) + list(bottom):
                e[v] += 1
            word_content[t * len(bottom_words) + u, content[tuple(e)]] = 1
    return Tables(
        d=d,
        cubic=np.array(cubic, dtype=np.int64),
        tensor_index=tensor_index,
        contraction=contraction,
        top_words=top_words,
        bottom_words=bottom_words,
        top_columns=np.array(top_columns, dtype=np.int64).reshape(-1, h),
        bottom_columns=np.array(bottom_columns, dtype=np.int64).reshape(-1, d - h),
        laplace_sign=np.array(signs, dtype=np.int64),
        word_content=word_content,
        degree_d=degree_d,
    )


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """inv[a] = a^-1 mod p, with inv[0] = 0."""
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def decode(codes: np.ndarray, p: int, n: int) -> np.ndarray:
    """(B,) codes -> (B, n) base-p digits, least significant first."""
    codes = np.asarray(codes, dtype=np.int64)
    powers = p ** np.arange(n, dtype=np.int64)
    return (codes[:, None] // powers[None, :]) % p


def encode(digits: np.ndarray, p: int) -> np.ndarray:
    n = digits.shape[-1]
    powers = p ** np.arange(n, dtype=np.int64)
    return (digits.astype(np.int64) * powers).sum(axis=-1)


def to_tensor(coefficients: np.ndarray, d: int) -> np.ndarray:
    """(B, N) coefficient vectors -> (B, d, d, d) symmetric tensors."""
    return coefficients[:, tables(d).tensor_index]


def from_tensor(T: np.ndarray, d: int) -> np.ndarray:
    """(B, d, d, d) -> (B, N), reading one representative entry per monomial."""
    cubic = tables(d).cubic
    picks = []
    for e in cubic:
        letters = [v for v, k in enumerate(e) for _ in range(k)]
        picks.append(letters)
    picks = np.array(picks, dtype=np.int64)
    return T[:, picks[:, 0], picks[:, 1], picks[:, 2]]


def pack_rows(M: np.ndarray) -> np.ndarray:
    """(..., n, m) 0/1 -> (..., n) integer bitsets."""
    weights = np.left_shift(np.int64(1), np.arange(M.shape[-1], dtype=np.int64))
    return (M.astype(np.int64) * weights).sum(axis=-1)


def rank_gf2(M: np.ndarray) -> np.ndarray:
    """Batched rank over GF(2) by XOR elimination on packed rows."""
    rows = pack_rows(M % 2)
    n = rows.shape[-1]
    rank = np.zeros(rows.shape[:-1], dtype=np.int64)
    for r in range(n):
        pivot = rows[..., r]
        nonzero = pivot != 0
        rank += nonzero
        low = pivot & -pivot
        for s in range(r + 1, n):
            hit = (rows[..., s] & low) != 0
            rows[..., s] = np.where(hit, rows[..., s] ^ pivot, rows[..., s])
    return rank


def rank_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Batched rank over GF(p) of (B, n, m) integer matrices by Gaussian elimination."""
    if p == 2:
        return rank_gf2(M)
    A = np.array(M, dtype=np.int64) % p
    batch, n, m = A.shape
    inv = inverse_table(p)
    rank = np.zeros(batch, dtype=np.int64)
    row_ids = np.arange(n)
    for c in range(m):
        eligible = (A[:, :, c] != 0) & (row_ids[None, :] >= rank[:, None])
        has = eligible.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        r = rank[b]
        pivot_rows = np.argmax(eligible[b], axis=1)
        pivot = A[b, pivot_rows].copy()
        A[b, pivot_rows] = A[b, r]
        A[b, r] = (pivot * inv[pivot[:, c]][:, None]) % p
        factors = A[b, :, c].copy()
        factors[np.arange(len(b)), r] = 0
        A[b] = (A[b] - factors[:, :, None] * A[b, r][:, None, :]) % p
        rank[b] += 1
    return rank


def embedding_dimensions(coefficients: np.ndarray, p: int, d: int) -> np.ndarray:
    """Rank of ell -> ell . phi for each row of (B, N) coefficients."""
    matrices = coefficients[:, tables(d).contraction]
    return rank_mod_p(matrices, p)


def _minors(T: np.ndarray, words: np.ndarray, rows: List[int], columns: np.ndarray, p: int) -> np.ndarray:
    """det[T[:, w_r, rows[r], S_c]] for every word w and column set S: (B, nW, nS)."""
    size = len(rows)
    total = np.zeros((T.shape[0], len(words), len(columns)), dtype=np.int64)
    for perm in permutations(range(size)):
        inversions = sum(1 for a in range(size) for b in range(a + 1, size) if perm[a] > perm[b])
        term = np.ones_like(total)
        for r, row in enumerate(rows):
            term = (term * T[:, words[:, r][:, None], row, columns[:, perm[r]][None, :]]) % p
        total += term if inversions % 2 == 0 else -term
    return total % p


def gamma_values(T: np.ndarray, p: int) -> np.ndarray:
    """(B, d, d, d) -> (B, nD): Gamma on each divided monomial of degree d, mod p.

    The coefficient of t^e in det(sum_k t_k T[k]) is the sum over words with content e of
    det[T[w_i, i, :]], each expanded along its first d//2 rows.
    """
    d = T.shape[1]
    tab = tables(d)
    h = d // 2
    top = _minors(T, tab.top_words, list(range(h)), tab.top_columns, p)
    bottom = _minors(T, tab.bottom_words, list(range(h, d)), tab.bottom_columns, p)
    signed = (top * tab.laplace_sign[None, None, :]) % p
    words = np.einsum("bts,bus->btu", signed, bottom) % p
    words = words.reshape(T.shape[0], -1)
    return (words @ tab.word_content) % p


@lru_cache(maxsize=None)
def projective_points(p: int, d: int) -> np.ndarray:
    """Nonzero vectors with leading coordinate 1, in lex order: (P, d)."""
    points = []
    for lead in range(d):
        for tail in product(range(p), repeat=d - lead - 1):
            points.append([0] * lead + [1] + list(tail))
    return np.array(points, dtype=np.int64)


def power_matrices(T: np.ndarray, p: int) -> np.ndarray:
    """(B, P, d, d): sum_k ell_k T[k] for every projective ell."""
    points = projective_points(p, T.shape[1])
    return np.einsum("qk,bkij->bqij", points, T) % p


@dataclass
class Classification:
    """Per-system census columns for one batch."""
    embedding_dim: np.ndarray
    gamma_zero: np.ndarray
    wlp_found: np.ndarray
    witness: np.ndarray       # index into projective_points, or -1
    power_det_nonzero: np.ndarray


def classify_batch(coefficients: np.ndarray, p: int, d: int) -> Classification:
    """Embedding dimension, Gamma vanishing and rational WLP search for a batch.

    multiplication by ell is of maximal rank in every degree iff rank H(ell) equals
    the embedding dimension, H(ell) being the matrix of v -> (ell v) . phi on U.
    """
    T = to_tensor(coefficients, d)
    embedding_dim = embedding_dimensions(coefficients, p, d)
    gamma = gamma_values(T, p)
    gamma_zero = ~gamma.any(axis=1)
    H = power_matrices(T, p)
    batch, count = H.shape[:2]
    ranks = rank_mod_p(H.reshape(batch * count, d, d), p).reshape(batch, count)
    good = ranks == embedding_dim[:, None]
    wlp_found = good.any(axis=1)
    witness = np.where(wlp_found, np.argmax(good, axis=1), -1)
    return Classification(embedding_dim, gamma_zero, wlp_found, witness, (ranks == d).any(axis=1))


@lru_cache(maxsize=None)
def general_linear_group(p: int, d: int) -> np.ndarray:
    """All invertible d x d matrices over GF(p): (G, d, d)."""
    codes = np.arange(p ** (d * d), dtype=np.int64)
    matrices = decode(codes, p, d * d).reshape(-1, d, d)
    keep = rank_mod_p(matrices, p) == d
    return matrices[keep]


def act(G: np.ndarray, T: np.ndarray, p: int) -> np.ndarray:
    """T'[a,b,c] = sum G[a,i] G[b,j] G[c,k] T[i,j,k] for each matrix in G: (G, d, d, d)."""
    step = np.einsum("gai,ijk->gajk", G, T) % p
    step = np.einsum("gbj,gajk->gabk", G, step) % p
    return np.einsum("gck,gabk->gabc", G, step) % p


def orbit_codes(coefficients: np.ndarray, p: int, d: int, batch_size: int = 4096) -> np.ndarray:
    """Sorted codes of the GL_d(GF(p)) orbit of one coefficient vector."""
    T = to_tensor(np.asarray(coefficients, dtype=np.int64)[None, :], d)[0]
    group = general_linear_group(p, d)
    found = []
    for start in range(0, len(group), batch_size):
        images = act(group[start:start + batch_size], T, p)
        found.append(np.unique(encode(from_tensor(images, d), p)))
    return np.unique(np.concatenate(found))

