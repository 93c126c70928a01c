"""Combinatorial invariants of the R/T sets, checked from their statements."""


def claims_counterexample(p):
    """First violated claim as a tuple, or None when all four hold."""
    n = p.n
    T = lambda k: set(p.T_set(k)) if k <= n else set()  # noqa: E731
    Rs = lambda k: set(p.R_set(k)) if k <= n else set()  # noqa: E731

    def chain(k, target):
        if k == target:
            return True
        return any(chain(s + 1, target) for s in Rs(k) if s + 1 <= target)

    for k in range(1, n + 1):
        for m in range(k, n + 1):
            if (m in T(k)) != chain(k, m + 1):
                return "claim1", k, m
        for s in T(k):
            for m in T(s + 1):
                if m not in T(k):
                    return "claim2", k, s, m
        for m in T(k):
            for s in range(k, m):
                if not (s in T(k) or m in T(s + 1)):
                    return "claim3", k, m, s
        tt = p.theta.tilde(k)
        for m in range(k, tt):
            if (m in T(k)) == (tt in T(m + 1)):
                return "claim4", k, m
    return None
