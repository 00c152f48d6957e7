"""Plain-text file formats for patches and coefficient tables.

Both formats are line-oriented: '#' starts a comment, blank lines are
ignored, headers come first, then one record per line.  All floating-point
values are written with 17 significant digits so files round-trip bitwise.

Patch file::

    degree 3
    dim 2
    weights yes            # optional; default no
    0 0 1.5 2.25 1.0       # k1 k2 v_1 .. v_dim [weight]
    ...                    # one record per index of theta(degree)

Table file::

    n 5
    alpha 0.5 0 -0.29999999999999999
    c 1 0 1                # optional; omitted or zero means unconstrained
    0 0 0 0 9              # k1 k2 l1 l2 value, one per unordered index pair
    ...

Table records cover each unordered pair exactly once over the full index
triangle, or over the constrained interior when c is present.
"""

from __future__ import annotations

import numpy as np

from .domains import (
    CoeffTable,
    ConstraintVector,
    as_alpha,
    as_constraint,
    in_theta,
    omega,
    theta,
    theta_position,
)
from .errors import FormatError
from .patch import TriPatch


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _content_lines(path: str):
    """Yield (line_number, tokens) for non-blank, non-comment lines."""
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            yield lineno, line.split()


def write_patch(path: str, patch: TriPatch) -> None:
    """Write a patch file; records follow the canonical index order."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"degree {patch.n}\n")
        fh.write(f"dim {patch.dim}\n")
        if patch.is_rational:
            fh.write("weights yes\n")
        for k1, k2 in theta(patch.n):
            p = theta_position(patch.n, k1, k2)
            cells = [str(k1), str(k2)] + [_fmt(v) for v in patch.values[p]]
            if patch.is_rational:
                cells.append(_fmt(patch.weights[p]))
            fh.write(" ".join(cells) + "\n")


def read_patch(path: str) -> TriPatch:
    """Parse a patch file; records may appear in any order but must be complete."""
    degree = None
    dim = None
    weighted = False
    records: dict[tuple[int, int], tuple[list[float], float | None]] = {}
    for lineno, toks in _content_lines(path):
        key = toks[0].lower()
        if degree is None or dim is None or key in ("degree", "dim", "weights"):
            if key == "degree" and len(toks) == 2:
                try:
                    degree = int(toks[1])
                except ValueError:
                    raise FormatError(f"{path}:{lineno}: bad degree {toks[1]!r}") from None
                continue
            if key == "dim" and len(toks) == 2:
                try:
                    dim = int(toks[1])
                except ValueError:
                    raise FormatError(f"{path}:{lineno}: bad dim {toks[1]!r}") from None
                continue
            if key == "weights" and len(toks) == 2:
                if toks[1].lower() not in ("yes", "no"):
                    raise FormatError(f"{path}:{lineno}: weights must be 'yes' or 'no'")
                weighted = toks[1].lower() == "yes"
                continue
            raise FormatError(
                f"{path}:{lineno}: expected 'degree' and 'dim' headers before records"
            )
        want = 2 + dim + (1 if weighted else 0)
        if len(toks) != want:
            raise FormatError(
                f"{path}:{lineno}: expected {want} fields (k1 k2 values"
                f"{' weight' if weighted else ''}), got {len(toks)}"
            )
        try:
            k1, k2 = int(toks[0]), int(toks[1])
            nums = [float(t) for t in toks[2:]]
        except ValueError:
            raise FormatError(f"{path}:{lineno}: malformed record") from None
        if not in_theta(degree, (k1, k2)):
            raise FormatError(f"{path}:{lineno}: index ({k1}, {k2}) outside degree-{degree} triangle")
        if (k1, k2) in records:
            raise FormatError(f"{path}:{lineno}: duplicate record for index ({k1}, {k2})")
        if weighted:
            records[(k1, k2)] = (nums[:-1], nums[-1])
        else:
            records[(k1, k2)] = (nums, None)
    if degree is None or dim is None:
        raise FormatError(f"{path}: missing 'degree' or 'dim' header")
    if dim < 1:
        raise FormatError(f"{path}: dim must be >= 1, got {dim}")
    dom = theta(degree)
    missing = [k for k in dom if (k.k1, k.k2) not in records]
    if missing:
        raise FormatError(
            f"{path}: {len(missing)} of {len(dom)} records missing (first: {tuple(missing[0])})"
        )
    values = np.empty((len(dom), dim))
    weights = np.empty(len(dom)) if weighted else None
    for k in dom:
        p = dom.position(k)
        vals, w = records[(k.k1, k.k2)]
        values[p] = vals
        if weighted:
            weights[p] = w
    try:
        return TriPatch(degree, values, weights)
    except Exception as exc:
        raise FormatError(f"{path}: {exc}") from exc


def write_table(path: str, table: CoeffTable, c=None) -> None:
    """Write a table file; one record per unordered pair of domain indices."""
    cc = as_constraint(c)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"n {table.n}\n")
        if table.alpha is not None:
            a = table.alpha
            fh.write(f"alpha {_fmt(a.a1)} {_fmt(a.a2)} {_fmt(a.a3)}\n")
        else:
            raise FormatError("table carries no weight exponents; cannot write header")
        if not cc.is_zero:
            fh.write(f"c {cc.c1} {cc.c2} {cc.c3}\n")
        dom = theta(table.n) if cc.is_zero else omega(table.n, cc)
        idx = list(dom)
        for i, k in enumerate(idx):
            for l in idx[i:]:
                fh.write(
                    f"{k.k1} {k.k2} {l.k1} {l.k2} {_fmt(table.get(k, l))}\n"
                )


def read_table(path: str) -> tuple[CoeffTable, ConstraintVector]:
    """Parse a table file back into a CoeffTable plus its constraint orders."""
    n = None
    alpha = None
    cc = ConstraintVector()
    pairs: list[tuple[tuple[int, int], tuple[int, int], float]] = []
    for lineno, toks in _content_lines(path):
        key = toks[0].lower()
        if key == "n" and len(toks) == 2:
            try:
                n = int(toks[1])
            except ValueError:
                raise FormatError(f"{path}:{lineno}: bad degree {toks[1]!r}") from None
            continue
        if key == "alpha" and len(toks) == 4:
            try:
                alpha = tuple(float(t) for t in toks[1:])
            except ValueError:
                raise FormatError(f"{path}:{lineno}: bad alpha line") from None
            continue
        if key == "c" and len(toks) == 4:
            try:
                cc = ConstraintVector(int(toks[1]), int(toks[2]), int(toks[3]))
            except Exception as exc:
                raise FormatError(f"{path}:{lineno}: bad constraint line: {exc}") from exc
            continue
        if n is None or alpha is None:
            raise FormatError(f"{path}:{lineno}: expected 'n' and 'alpha' headers before records")
        if len(toks) != 5:
            raise FormatError(f"{path}:{lineno}: expected 'k1 k2 l1 l2 value', got {len(toks)} fields")
        try:
            k = (int(toks[0]), int(toks[1]))
            l = (int(toks[2]), int(toks[3]))
            val = float(toks[4])
        except ValueError:
            raise FormatError(f"{path}:{lineno}: malformed record") from None
        pairs.append((k, l, val))
    if n is None or alpha is None:
        raise FormatError(f"{path}: missing 'n' or 'alpha' header")
    table = CoeffTable(n, alpha=as_alpha(alpha))
    dom = theta(n) if cc.is_zero else omega(n, cc)
    member = set((k.k1, k.k2) for k in dom)
    seen = set()
    for k, l, val in pairs:
        if k not in member or l not in member:
            raise FormatError(f"{path}: record pair {k}, {l} outside the table domain")
        cell = (min(k, l), max(k, l))
        if cell in seen:
            raise FormatError(f"{path}: duplicate record for pair {k}, {l}")
        seen.add(cell)
        table.set(k, l, val)
    want = len(dom) * (len(dom) + 1) // 2
    if len(seen) != want:
        raise FormatError(f"{path}: expected {want} unordered pairs, found {len(seen)}")
    return table, cc
