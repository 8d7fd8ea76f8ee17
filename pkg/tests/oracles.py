"""Independent brute-force oracles for cross-checking the solvers.

Everything here is deliberately written without the library's matrix or
search machinery: plain Python arithmetic, itertools subsets, explicit
loops. Slow and obviously correct.
"""

from itertools import combinations


def sq_dists(points):
    """Squared Euclidean distances via plain float arithmetic."""
    m = len(points)
    d = [[0.0] * m for _ in range(m)]
    for i in range(m):
        xi, yi = points[i]
        for j in range(m):
            dx = xi - points[j][0]
            dy = yi - points[j][1]
            d[i][j] = dx * dx + dy * dy
    return d


def center_value(d, subset):
    """max over demands of the distance to the nearest subset member."""
    return max(min(row[j] for j in subset) for row in d)


def brute_curve(points):
    """Exact z_p^2 for every p by enumerating all site subsets."""
    d = sq_dists(points)
    m = len(points)
    out = {}
    for p in range(1, m + 1):
        best = None
        for subset in combinations(range(m), p):
            v = center_value(d, subset)
            if best is None or v < best:
                best = v
        out[p] = best
    return out


def brute_single_p(points, p):
    d = sq_dists(points)
    return min(center_value(d, s) for s in combinations(range(len(points)), p))


def brute_min_cover(site_masks, universe):
    """Smallest covering subset by exhaustive search, lexicographic ties.

    Checks subsets in increasing cardinality, so the first hit is
    optimal and lexicographically minimal at that size.
    """
    m = len(site_masks)
    if universe == 0:
        return []
    for r in range(1, m + 1):
        for combo in combinations(range(m), r):
            u = 0
            for j in combo:
                u |= site_masks[j]
            if u & universe == universe:
                return list(combo)
    raise AssertionError("no cover exists")


def distinct_sq_values(points):
    """Unique squared distances including the diagonal zero."""
    d = sq_dists(points)
    vals = {0.0}
    m = len(points)
    for i in range(m):
        for j in range(i + 1, m):
            vals.add(d[i][j])
    return sorted(vals)


def parse_lp(text):
    """Minimal LP text reader: returns (binaries, constraint_names, terms).

    ``terms`` maps constraint name to the list of variable tokens in it.
    Comment lines (leading backslash) are ignored. Good enough to count
    and compare the models this suite emits.
    """
    binaries = []
    constraints = {}
    section = None
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        low = line.lower()
        if low in ("minimize", "maximize", "subject to", "bounds", "binaries", "end"):
            section = low
            current = None
            continue
        if section == "subject to":
            if ":" in line:
                name, _, rest = line.partition(":")
                current = name.strip()
                constraints[current] = []
                line = rest
            tokens = [t for t in line.replace("+", " ").replace("-", " ").split()
                      if t and not _is_number(t) and t not in ("<=", ">=", "=")]
            if current is not None:
                constraints[current].extend(tokens)
        elif section == "binaries":
            binaries.extend(line.split())
    return binaries, constraints


def _is_number(tok):
    try:
        float(tok)
        return True
    except ValueError:
        return False
