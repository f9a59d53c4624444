"""Jitted hot loops: walk samplers, exhaustive longest path, and a fast
incremental-run engine that is distribution-equivalent to the pure-Python
reference (same per-step acceptance rules and evaluation accounting, its own
seeded PRNG stream)."""

from __future__ import annotations

import numpy as np
from numba import njit

ALG_GENERIC = 0
ALG_TAILORED = 1
ALG_ONE_PLUS_LAMBDA = 2
ALG_ISLAND = 3

STATUS_NO_CONFLICT = 0
STATUS_SOLVED = 1
STATUS_TIMEOUT = 2
STATUS_SKIPPED = 3


@njit(cache=True)
def longest_path_dp(n, indptr, indices):
    # reachable (vertex subset, endpoint) states; best = max edges over any state
    size = 1 << n
    dp = np.zeros((size, n), np.bool_)
    for v in range(n):
        dp[1 << v, v] = True
    best = 0
    for mask in range(1, size):
        pc = 0
        mm = mask
        while mm:
            mm &= mm - 1
            pc += 1
        for v in range(n):
            if dp[mask, v]:
                if pc - 1 > best:
                    best = pc - 1
                for ii in range(indptr[v], indptr[v + 1]):
                    u = indices[ii]
                    if not (mask >> u) & 1:
                        dp[mask | (1 << u), u] = True
    return best


@njit(cache=True)
def min_walk_times(k, eta, samples, seed):
    # eta lockstep fair walks on {0..k-1}, elastic wall above k-1, all starting
    # at state 1; record the first generation at which any walk hits 0
    np.random.seed(seed)
    out = np.empty(samples, np.int64)
    top = k - 1
    states = np.empty(eta, np.int64)
    for s in range(samples):
        for j in range(eta):
            states[j] = 1
        t = 0
        done = False
        while not done:
            t += 1
            for j in range(eta):
                x = states[j]
                if np.random.random() < 0.5:
                    x -= 1
                elif x < top:
                    x += 1
                states[j] = x
                if x == 0:
                    done = True
        out[s] = t
    return out


@njit(cache=True)
def tail_exceed_count(k, threshold, samples, seed):
    # single fair walk from the top state; counts samples whose absorption
    # time is >= threshold
    np.random.seed(seed)
    top = k - 1
    count = 0
    for s in range(samples):
        x = top
        t = 0
        while t < threshold and x > 0:
            t += 1
            if np.random.random() < 0.5:
                x -= 1
            elif x < top:
                x += 1
        if t == threshold:
            count += 1
    return count


@njit(cache=True)
def _set_add(v, members, pos, meta):
    if pos[v] < 0:
        pos[v] = meta[0]
        members[meta[0]] = v
        meta[0] += 1


@njit(cache=True)
def _set_remove(v, members, pos, meta):
    i = pos[v]
    meta[0] -= 1
    last = members[meta[0]]
    members[i] = last
    pos[last] = i
    pos[v] = -1


@njit(cache=True)
def _flip(v, colors, conf, ins_adj, ins_deg, indptr, members, pos, meta):
    # meta[0] = conflicting-set size, meta[1] = conflict count
    old = colors[v]
    colors[v] = 1 - old
    base = indptr[v]
    deg = ins_deg[v]
    delta = deg - 2 * conf[v]
    for t in range(deg):
        u = ins_adj[base + t]
        if colors[u] == old:
            conf[u] -= 1
            if conf[u] == 0:
                _set_remove(u, members, pos, meta)
        else:
            conf[u] += 1
            if conf[u] == 1:
                _set_add(u, members, pos, meta)
    newc = deg - conf[v]
    if conf[v] > 0 and newc == 0:
        _set_remove(v, members, pos, meta)
    elif conf[v] == 0 and newc > 0:
        _set_add(v, members, pos, meta)
    conf[v] = newc
    meta[1] += delta


@njit(cache=True)
def _insert(u, v, colors, conf, ins_adj, ins_deg, indptr, members, pos, meta):
    ins_adj[indptr[u] + ins_deg[u]] = v
    ins_deg[u] += 1
    ins_adj[indptr[v] + ins_deg[v]] = u
    ins_deg[v] += 1
    if colors[u] == colors[v]:
        meta[1] += 1
        conf[u] += 1
        if conf[u] == 1:
            _set_add(u, members, pos, meta)
        conf[v] += 1
        if conf[v] == 1:
            _set_add(v, members, pos, meta)
        return True
    return False


@njit(cache=True)
def ir_run(n, eu, ev, indptr, order, alg, lam, budget, seed, continue_on_timeout):
    """One full incremental run. Returns per-insertion accounting arrays, the
    final coloring, the final conflict count, and the abort index (-1: none)."""
    m = order.shape[0]
    conflict_introduced = np.zeros(m, np.uint8)
    generations = np.zeros(m, np.int64)
    evaluations = np.zeros(m, np.int64)
    status = np.zeros(m, np.uint8)

    np.random.seed(seed)
    colors = np.empty(n, np.uint8)
    for v in range(n):
        colors[v] = np.random.randint(0, 2)
    ins_adj = np.zeros(indptr[n], np.int64)
    ins_deg = np.zeros(n, np.int64)
    conf = np.zeros(n, np.int64)
    members = np.zeros(n, np.int64)
    pos = np.full(n, -1, np.int64)
    meta = np.zeros(2, np.int64)

    isl_rows = lam if alg == ALG_ISLAND else 1
    colors_isl = np.zeros((isl_rows, n), np.uint8)
    conf_isl = np.zeros((isl_rows, n), np.int64)
    members_isl = np.zeros((isl_rows, n), np.int64)
    pos_isl = np.zeros((isl_rows, n), np.int64)
    meta_isl = np.zeros((isl_rows, 2), np.int64)
    cand = np.zeros(lam, np.int64)
    deltas = np.zeros(lam, np.int64)

    aborted_at = np.int64(-1)
    for i in range(m):
        if aborted_at >= 0:
            status[i] = STATUS_SKIPPED
            continue
        e = order[i]
        introduced = _insert(eu[e], ev[e], colors, conf, ins_adj, ins_deg, indptr,
                             members, pos, meta)
        if introduced:
            conflict_introduced[i] = 1
        if meta[1] == 0:
            evaluations[i] = 1
            status[i] = STATUS_NO_CONFLICT
            continue

        gens = np.int64(0)
        if alg == ALG_GENERIC:
            while meta[1] > 0 and gens < budget:
                gens += 1
                w = np.random.randint(0, n)
                if ins_deg[w] - 2 * conf[w] <= 0:
                    _flip(w, colors, conf, ins_adj, ins_deg, indptr, members, pos, meta)
            evaluations[i] = gens
        elif alg == ALG_TAILORED:
            while meta[1] > 0 and gens < budget:
                gens += 1
                w = members[np.random.randint(0, meta[0])]
                if ins_deg[w] - 2 * conf[w] <= 0:
                    _flip(w, colors, conf, ins_adj, ins_deg, indptr, members, pos, meta)
            evaluations[i] = gens
        elif alg == ALG_ONE_PLUS_LAMBDA:
            while meta[1] > 0 and gens < budget:
                gens += 1
                best = np.int64(2 ** 62)
                for j in range(lam):
                    w = members[np.random.randint(0, meta[0])]
                    d = ins_deg[w] - 2 * conf[w]
                    cand[j] = w
                    deltas[j] = d
                    if d < best:
                        best = d
                if best <= 0:
                    nbest = 0
                    for j in range(lam):
                        if deltas[j] == best:
                            nbest += 1
                    pick = np.random.randint(0, nbest)
                    for j in range(lam):
                        if deltas[j] == best:
                            if pick == 0:
                                _flip(cand[j], colors, conf, ins_adj, ins_deg, indptr,
                                      members, pos, meta)
                                break
                            pick -= 1
            evaluations[i] = gens * lam
        else:  # ALG_ISLAND
            for j in range(lam):
                colors_isl[j, :] = colors
                conf_isl[j, :] = conf
                members_isl[j, :] = members
                pos_isl[j, :] = pos
                meta_isl[j, 0] = meta[0]
                meta_isl[j, 1] = meta[1]
            winner = -1
            while winner < 0 and gens < budget:
                gens += 1
                for j in range(lam):
                    w = members_isl[j, np.random.randint(0, meta_isl[j, 0])]
                    if ins_deg[w] - 2 * conf_isl[j, w] <= 0:
                        _flip(w, colors_isl[j], conf_isl[j], ins_adj, ins_deg, indptr,
                              members_isl[j], pos_isl[j], meta_isl[j])
                for j in range(lam):
                    if meta_isl[j, 1] == 0:
                        winner = j
                        break
            if winner < 0:
                # adopt the best island (fewest conflicts, lowest index wins ties)
                winner = 0
                for j in range(1, lam):
                    if meta_isl[j, 1] < meta_isl[winner, 1]:
                        winner = j
            colors[:] = colors_isl[winner]
            conf[:] = conf_isl[winner]
            members[:] = members_isl[winner]
            pos[:] = pos_isl[winner]
            meta[0] = meta_isl[winner, 0]
            meta[1] = meta_isl[winner, 1]
            evaluations[i] = gens * lam

        generations[i] = gens
        if meta[1] == 0:
            status[i] = STATUS_SOLVED
        else:
            status[i] = STATUS_TIMEOUT
            if not continue_on_timeout:
                aborted_at = i

    return (conflict_introduced, generations, evaluations, status, colors,
            meta[1], aborted_at)
