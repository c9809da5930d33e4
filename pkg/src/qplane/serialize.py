"""JSON encoding of the library's domain objects.

Scalars travel as canonical strings of the scalar grammar, matrices as
{"rows", "cols", "entries"} with a string per entry, pairs as
{"field", "A", "B"} with the context stated once at the top.  Component
indices are dense lists for a finite order and sparse {size: count} maps in
the infinite regime.
"""

from .commutant import MatrixPair
from .components import ComponentIndex
from .errors import ParseError
from .git_quotient import GitIndex, TraceFingerprint
from .jordan import JordanSpec
from .matrices import QMatrix
from .scalars import FieldContext, INFINITE, format_scalar, parse_scalar


def ell_to_obj(ell):
    return "inf" if ell is INFINITE else ell


def ell_from_obj(value):
    if value in ("inf", "infinity", "oo"):
        return INFINITE
    if isinstance(value, int) and value >= 1:
        return value
    raise ParseError(f"not a valid order: {value!r}")


def matrix_to_obj(M: QMatrix, with_field=False):
    obj = {
        "rows": M.nrows,
        "cols": M.ncols,
        "entries": [[format_scalar(x) for x in row] for row in M.rows],
    }
    if with_field:
        obj["field"] = M.ctx.to_obj()
    return obj


def matrix_from_obj(obj, ctx=None) -> QMatrix:
    if not isinstance(obj, dict):
        raise ParseError("matrix must be a JSON object")
    if ctx is None:
        if "field" not in obj:
            raise ParseError("matrix object needs a 'field' key")
        ctx = FieldContext.from_obj(obj["field"])
    try:
        nrows, ncols, entries = obj["rows"], obj["cols"], obj["entries"]
    except KeyError as missing:
        raise ParseError(f"matrix object lacks key {missing}") from None
    if not isinstance(nrows, int) or not isinstance(ncols, int) or nrows < 0 or ncols < 0:
        raise ParseError("matrix sides must be nonnegative integers")
    if len(entries) != nrows or any(len(row) != ncols for row in entries):
        raise ParseError("entry grid does not match the declared shape")
    if nrows == 0 or ncols == 0:
        return QMatrix.zero(ctx, nrows, ncols)
    rows = [[parse_scalar(text, ctx) for text in row] for row in entries]
    return QMatrix(ctx, rows)


def pair_to_obj(pair: MatrixPair):
    return {
        "field": pair.ctx.to_obj(),
        "A": matrix_to_obj(pair.A),
        "B": matrix_to_obj(pair.B),
    }


def pair_from_obj(obj) -> MatrixPair:
    if not isinstance(obj, dict):
        raise ParseError("pair must be a JSON object")
    for key in ("field", "A", "B"):
        if key not in obj:
            raise ParseError(f"pair object lacks the '{key}' key")
    ctx = FieldContext.from_obj(obj["field"])
    A = matrix_from_obj(obj["A"], ctx)
    B = matrix_from_obj(obj["B"], ctx)
    return MatrixPair(A, B)


def _counts_to_obj(counts, dense):
    if dense:
        return list(counts)
    return {str(i + 1): c for i, c in enumerate(counts) if c}


def _counts_from_obj(value, what):
    if isinstance(value, list):
        if not all(isinstance(c, int) for c in value):
            raise ParseError(f"'{what}' entries must be integers")
        return tuple(value)
    if isinstance(value, dict):
        counts = {}
        for key, c in value.items():
            try:
                size = int(key)
            except (TypeError, ValueError):
                raise ParseError(f"'{what}' keys must be integer block sizes") from None
            if size < 1 or not isinstance(c, int):
                raise ParseError(f"'{what}' must map sizes >= 1 to integer counts")
            counts[size] = c
        top = max(counts, default=0)
        return tuple(counts.get(i, 0) for i in range(1, top + 1))
    raise ParseError(f"'{what}' must be a list or a sparse object")


def index_to_obj(idx: ComponentIndex):
    dense = idx.ell is not INFINITE
    return {
        "m": _counts_to_obj(idx.m, dense),
        "r": _counts_to_obj(idx.r, dense),
    }


def index_from_obj(obj, ell) -> ComponentIndex:
    if not isinstance(obj, dict):
        raise ParseError("component index must be a JSON object")
    m = _counts_from_obj(obj.get("m", []), "m")
    r = _counts_from_obj(obj.get("r", []), "r")
    return ComponentIndex(ell, m, r)


def git_index_to_obj(idx: GitIndex):
    return {"p": idx.p, "m": idx.m, "r": idx.r}


def spec_to_obj(spec: JordanSpec):
    return {
        "blocks": [
            {"eigenvalue": format_scalar(lam), "partition": list(parts)}
            for lam, parts in spec.blocks
        ]
    }


def spec_from_obj(obj, ctx) -> JordanSpec:
    if not isinstance(obj, dict) or "blocks" not in obj:
        raise ParseError("Jordan data must be an object with a 'blocks' list")
    blocks = []
    for entry in obj["blocks"]:
        if not isinstance(entry, dict):
            raise ParseError("each block must be an object")
        try:
            lam_text, parts = entry["eigenvalue"], entry["partition"]
        except KeyError as missing:
            raise ParseError(f"block lacks key {missing}") from None
        if not all(isinstance(p, int) for p in parts):
            raise ParseError("partition parts must be integers")
        blocks.append((parse_scalar(lam_text, ctx), tuple(parts)))
    return JordanSpec(ctx, blocks)


def fingerprint_to_obj(fp: TraceFingerprint):
    return {
        "N": fp.max_degree,
        "T": [[format_scalar(x) for x in row] for row in fp.grid],
    }
