"""Enumeration kernels: product-tree sweeps and branch-and-bound passes.

The same function bodies run two ways: jitted with numba (default) or as
plain numpy (set JSR_PURE_NUMPY=1).  Both walk the product tree in the
same lexicographic depth-first order, so prune decisions, witnesses and
node counts are identical on either path.

Argmax updates require a relative improvement > 1e-12 so that ulp-level
eigenvalue noise cannot override the lex/shortest tie-break.
"""

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dep, but be graceful
    HAVE_NUMBA = False

USING_NUMBA = HAVE_NUMBA and os.environ.get("JSR_PURE_NUMPY", "0") != "1"

if USING_NUMBA:
    _jit = numba.njit(cache=True)
else:

    def _jit(fn):
        return fn


# relative slack for "strictly better" in argmax updates
_TIE = 1e-12
# spectral radii below this are reported as exact zeros
_RHO_FLOOR = 1e-300
# refine's lower-bound candidates are shaved by this relative margin so
# the certificate stays below the true value under eigensolver noise;
# pruning, the upper certificate, and convergence all see the same
# shaved value, keeping upper - lower <= width exact on convergence
_EIG_SAFETY = 1e-12


@_jit
def _all_finite(a):
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            v = a[i, j]
            if not (np.isfinite(v.real) and np.isfinite(v.imag)):
                return False
    return True


@_jit
def mat_norm(a, fro):
    """Operator 2-norm via the Gram matrix, or Frobenius norm when fro.

    Overflowed products report inf instead of raising, so deep sweeps
    degrade to budget exhaustion on both execution paths.
    """
    if fro:
        s = 0.0
        for i in range(a.shape[0]):
            for j in range(a.shape[1]):
                v = a[i, j]
                s += v.real * v.real + v.imag * v.imag
        return np.sqrt(s)
    g = np.conj(a.T) @ a
    if not _all_finite(g):
        return np.inf
    w = np.linalg.eigvalsh(g)
    top = w[w.shape[0] - 1]
    if top <= 0.0:
        return 0.0
    return np.sqrt(top)


@_jit
def mat_rho(a):
    """Largest eigenvalue modulus (inf for non-finite input)."""
    if not _all_finite(a):
        return np.inf
    ev = np.linalg.eigvals(a)
    r = 0.0
    for i in range(ev.shape[0]):
        m = abs(ev[i])
        if m > r:
            r = m
    if r < _RHO_FLOOR:
        return 0.0
    return r


@_jit
def sweep_tree(gens, nmax, want_rho, fro):
    """Evaluate every product of length 1..nmax in lexicographic DFS order.

    Returns per-depth maxima of the norm and (optionally) the spectral
    radius, the lexicographically smallest maximizing word per depth, and
    the number of evaluated words.  Index 0 of the per-depth arrays is
    unused and stays at -1.
    """
    m, d, _ = gens.shape
    best_norm = np.full(nmax + 1, -1.0)
    best_rho = np.full(nmax + 1, -1.0)

    if m == 1:
        # the tree is a single path: rolling product, words are all zeros
        norm_words = np.zeros((1, 1), np.int64)
        rho_words = np.zeros((1, 1), np.int64)
        cur = np.eye(d, dtype=np.complex128)
        nodes = 0
        for k in range(1, nmax + 1):
            cur = cur @ gens[0]
            nodes += 1
            best_norm[k] = mat_norm(cur, fro)
            if want_rho:
                best_rho[k] = mat_rho(cur)
        return best_norm, best_rho, norm_words, rho_words, nodes

    norm_words = np.zeros((nmax + 1, nmax), np.int64)
    rho_words = np.zeros((nmax + 1, nmax), np.int64)
    prod = np.empty((nmax + 1, d, d), np.complex128)
    prod[0] = np.eye(d, dtype=np.complex128)
    word = np.zeros(nmax, np.int64)
    nodes = 0
    depth = 1
    word[0] = 0
    while depth > 0:
        k = depth
        prod[k] = prod[k - 1] @ gens[word[k - 1]]
        nodes += 1
        nrm = mat_norm(prod[k], fro)
        if nrm > best_norm[k] * (1.0 + _TIE):
            best_norm[k] = nrm
            for t in range(k):
                norm_words[k, t] = word[t]
        if want_rho:
            rho = mat_rho(prod[k])
            if rho > best_rho[k] * (1.0 + _TIE):
                best_rho[k] = rho
                for t in range(k):
                    rho_words[k, t] = word[t]
        if depth < nmax:
            depth += 1
            word[depth - 1] = 0
        else:
            while depth > 0 and word[depth - 1] == m - 1:
                depth -= 1
            if depth > 0:
                word[depth - 1] += 1
    return best_norm, best_rho, norm_words, rho_words, nodes


@_jit
def refine_pass(gens, depth_cap, width, lower_in, budget, fro):
    """One depth-capped branch-and-bound sweep of the product tree.

    A branch is cut at a product P of length k when ||P|| <= (lower+width)^k
    (compared in log space); the prune threshold only grows during the
    sweep, so every cut also holds for the final lower bound.  Nodes that
    reach depth_cap alive form the frontier.

    Returns (lower, wit_len, wit_word, frontier_max, saw_frontier,
    completed, nodes, deepest).  wit_len == 0 means no word improved on
    lower_in.  frontier_max is the max norm root over the frontier.
    """
    m, d, _ = gens.shape
    lower = lower_in
    wit_len = 0
    wit_word = np.zeros(depth_cap, np.int64)
    frontier_max = 0.0
    saw_frontier = False
    nodes = 0
    deepest = 0
    completed = True

    if m == 1:
        cur = np.eye(d, dtype=np.complex128)
        k = 0
        while k < depth_cap:
            if nodes >= budget:
                completed = False
                break
            k += 1
            cur = cur @ gens[0]
            nodes += 1
            if k > deepest:
                deepest = k
            nrm = mat_norm(cur, fro)
            alive = True
            if np.isfinite(nrm):
                v = mat_rho(cur) ** (1.0 / k) * (1.0 - _EIG_SAFETY)
                if v > lower * (1.0 + _TIE):
                    lower = v
                    wit_len = k
                if nrm <= 0.0 or np.log(nrm) <= k * np.log(lower + width):
                    alive = False
            if not alive:
                break
            if k == depth_cap:
                saw_frontier = True
                fm = nrm ** (1.0 / k)
                if fm > frontier_max:
                    frontier_max = fm
        return (lower, wit_len, wit_word, frontier_max, saw_frontier,
                completed, nodes, deepest)

    prod = np.empty((depth_cap + 1, d, d), np.complex128)
    prod[0] = np.eye(d, dtype=np.complex128)
    word = np.zeros(depth_cap, np.int64)
    depth = 1
    word[0] = 0
    while depth > 0:
        if nodes >= budget:
            completed = False
            break
        k = depth
        prod[k] = prod[k - 1] @ gens[word[k - 1]]
        nodes += 1
        if k > deepest:
            deepest = k
        nrm = mat_norm(prod[k], fro)
        alive = True
        if np.isfinite(nrm):
            v = mat_rho(prod[k]) ** (1.0 / k) * (1.0 - _EIG_SAFETY)
            if v > lower * (1.0 + _TIE):
                lower = v
                wit_len = k
                for t in range(k):
                    wit_word[t] = word[t]
            if nrm <= 0.0 or np.log(nrm) <= k * np.log(lower + width):
                alive = False
        descend = False
        if alive:
            if k == depth_cap:
                saw_frontier = True
                if np.isfinite(nrm):
                    fm = nrm ** (1.0 / k)
                else:
                    fm = np.inf
                if fm > frontier_max:
                    frontier_max = fm
            else:
                descend = True
        if descend:
            depth += 1
            word[depth - 1] = 0
        else:
            while depth > 0 and word[depth - 1] == m - 1:
                depth -= 1
            if depth > 0:
                word[depth - 1] += 1
    return (lower, wit_len, wit_word, frontier_max, saw_frontier,
            completed, nodes, deepest)
