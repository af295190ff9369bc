"""JSON instance files and verification reports.

The on-disk format is JSON with canonical ordering (sorted object keys,
two-space indent) and string-encoded exact scalars, so serialized
instances are diff-able and round-trip bit-exactly.  Parse errors carry
JSON-pointer-style locations.
"""

from __future__ import annotations

import hashlib
import json

from .duality import IntersectionPairing
from .errors import ParseError
from .graded import Filtration, GradedMap, GradedSpace
from .hodge import HodgeBigrading
from .instance import PerverseLefschetzInstance
from .linalg import Matrix, Subspace
from .scalars import FIELD_Q, FIELD_QI, format_scalar, parse_scalar
from .version import __version__

FORMAT_NAME = "perverse-lefschetz-instance"
FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# serialization


def _matrix_record(m: Matrix):
    return [[format_scalar(x) for x in row] for row in m.data]


def serialize_instance(inst: PerverseLefschetzInstance) -> dict:
    doc = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "center": inst.center,
        "degrees": [
            {"d": d, "dim": inst.space.dim(d),
             **({"labels": list(inst.space.labels[d])}
                if d in inst.space.labels else {})}
            for d in inst.space.degrees
        ],
        "filtration": [
            {"d": d, "i": i, "basis": _matrix_record(sub.basis)}
            for (d, i), sub in sorted(inst.filtration.steps.items())
        ],
        "eta": [
            {"d": d, "matrix": _matrix_record(blk)}
            for d, blk in sorted(inst.eta.blocks.items())
        ],
    }
    if inst.hodge is not None:
        doc["hodge"] = [
            {"d": d, "p": p, "q": q, "basis": _matrix_record(sub.basis)}
            for (d, p, q), sub in sorted(inst.hodge.pieces.items())
        ]
    if inst.pairing is not None:
        doc["pairing"] = {
            "n": inst.pairing.center,
            "blocks": [
                {"d": d, "matrix": _matrix_record(blk)}
                for d, blk in sorted(inst.pairing.blocks.items())
            ],
        }
    if inst.groups is not None:
        doc["groups"] = [
            {"name": name,
             "generators": [
                 [{"d": d, "matrix": _matrix_record(blk)}
                  for d, blk in sorted(gen.blocks.items())]
                 for gen in gens
             ]}
            for name, gens in sorted(inst.groups.items())
        ]
    return doc


def canonical_text(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize(inst: PerverseLefschetzInstance) -> str:
    return canonical_text(serialize_instance(inst))


def instance_hash(inst: PerverseLefschetzInstance) -> str:
    return "sha256:" + hashlib.sha256(serialize(inst).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# parsing


def _expect(cond, message, pointer):
    if not cond:
        raise ParseError(message, pointer)


def _get(obj, key, pointer, kind=None):
    _expect(isinstance(obj, dict), "expected an object", pointer)
    _expect(key in obj, f"missing field {key!r}", pointer)
    value = obj[key]
    if kind is not None:
        _expect(isinstance(value, kind) and not isinstance(value, bool),
                f"field {key!r} has the wrong type", f"{pointer}/{key}")
    return value


def _parse_matrix(rows, cols, obj, pointer, field=FIELD_Q):
    _expect(isinstance(obj, list) and len(obj) == rows,
            f"expected {rows} rows", pointer)
    data = []
    for r, row in enumerate(obj):
        _expect(isinstance(row, list) and len(row) == cols,
                f"expected {cols} entries", f"{pointer}/{r}")
        out = []
        for c, entry in enumerate(row):
            try:
                out.append(parse_scalar(entry, field))
            except ValueError as exc:
                raise ParseError(str(exc), f"{pointer}/{r}/{c}") from None
        data.append(out)
    return Matrix(rows, cols, data, field)


def parse_instance(doc) -> PerverseLefschetzInstance:
    _expect(isinstance(doc, dict), "top-level value must be an object", "")
    _expect(doc.get("format") == FORMAT_NAME,
            f"unknown format (expected {FORMAT_NAME!r})", "/format")
    _expect(doc.get("version") == FORMAT_VERSION,
            f"unsupported version (expected {FORMAT_VERSION})", "/version")
    center = _get(doc, "center", "", int)

    dims, labels = {}, {}
    degs = _get(doc, "degrees", "", list)
    for k, rec in enumerate(degs):
        ptr = f"/degrees/{k}"
        d = _get(rec, "d", ptr, int)
        dim = _get(rec, "dim", ptr, int)
        _expect(dim >= 0, "dimension must be ≥ 0", f"{ptr}/dim")
        _expect(d not in dims, f"duplicate degree {d}", f"{ptr}/d")
        dims[d] = dim
        if "labels" in rec:
            ls = rec["labels"]
            _expect(isinstance(ls, list) and all(isinstance(x, str) for x in ls)
                    and len(ls) == dim, f"expected {dim} label strings", f"{ptr}/labels")
            labels[d] = tuple(ls)
    space = GradedSpace(dims, labels)

    steps = {}
    for k, rec in enumerate(_get(doc, "filtration", "", list)):
        ptr = f"/filtration/{k}"
        d = _get(rec, "d", ptr, int)
        i = _get(rec, "i", ptr, int)
        basis = _get(rec, "basis", ptr, list)
        _expect(d in dims, f"filtration step in unknown degree {d}", f"{ptr}/d")
        _expect((d, i) not in steps, f"duplicate filtration step ({d}, {i})", ptr)
        mat = _parse_matrix(len(basis), dims[d], basis, f"{ptr}/basis")
        steps[(d, i)] = Subspace(dims[d], mat)
    filtration = Filtration(space, steps)

    eta_blocks = {}
    for k, rec in enumerate(_get(doc, "eta", "", list)):
        ptr = f"/eta/{k}"
        d = _get(rec, "d", ptr, int)
        _expect(d in dims, f"operator block in unknown degree {d}", f"{ptr}/d")
        _expect(d not in eta_blocks, f"duplicate operator block at degree {d}", ptr)
        eta_blocks[d] = _parse_matrix(dims.get(d + 2, 0), dims[d],
                                      _get(rec, "matrix", ptr, list), f"{ptr}/matrix")
    eta = GradedMap(2, eta_blocks, space)

    hodge = None
    if "hodge" in doc:
        pieces, weights = {}, {}
        for k, rec in enumerate(_get(doc, "hodge", "", list)):
            ptr = f"/hodge/{k}"
            d = _get(rec, "d", ptr, int)
            p = _get(rec, "p", ptr, int)
            q = _get(rec, "q", ptr, int)
            _expect(d in dims, f"bigrading piece in unknown degree {d}", f"{ptr}/d")
            _expect(weights.setdefault(d, p + q) == p + q,
                    f"inconsistent weight in degree {d}", ptr)
            basis = _get(rec, "basis", ptr, list)
            mat = _parse_matrix(len(basis), dims[d], basis, f"{ptr}/basis", FIELD_QI)
            pieces[(d, p, q)] = Subspace(dims[d], mat)
        for d in space.degrees:
            _expect(d in weights, f"no bigrading pieces in degree {d}", "/hodge")
        hodge = HodgeBigrading(space, weights, pieces)

    pairing = None
    if "pairing" in doc:
        rec = doc["pairing"]
        n = _get(rec, "n", "/pairing", int)
        _expect(n == center, "pairing center differs from the instance center",
                "/pairing/n")
        blocks = {}
        for k, brec in enumerate(_get(rec, "blocks", "/pairing", list)):
            ptr = f"/pairing/blocks/{k}"
            d = _get(brec, "d", ptr, int)
            _expect(d in dims, f"pairing block in unknown degree {d}", f"{ptr}/d")
            _expect(d not in blocks, f"duplicate pairing block at degree {d}", ptr)
            blocks[d] = _parse_matrix(dims[d], dims.get(2 * n - d, 0),
                                      _get(brec, "matrix", ptr, list), f"{ptr}/matrix")
        pairing = IntersectionPairing(n, space, blocks)

    groups = None
    if "groups" in doc:
        groups = {}
        for k, rec in enumerate(_get(doc, "groups", "", list)):
            ptr = f"/groups/{k}"
            name = _get(rec, "name", ptr, str)
            gens = []
            for g, grec in enumerate(_get(rec, "generators", ptr, list)):
                gptr = f"{ptr}/generators/{g}"
                blocks = {}
                _expect(isinstance(grec, list), "expected a list of blocks", gptr)
                for b, brec in enumerate(grec):
                    bptr = f"{gptr}/{b}"
                    d = _get(brec, "d", bptr, int)
                    _expect(d in dims, f"generator block in unknown degree {d}",
                            f"{bptr}/d")
                    blocks[d] = _parse_matrix(dims[d], dims[d],
                                              _get(brec, "matrix", bptr, list),
                                              f"{bptr}/matrix")
                gens.append(GradedMap(0, blocks, space))
            groups[name] = tuple(gens)

    return PerverseLefschetzInstance(center=center, space=space,
                                     filtration=filtration, eta=eta,
                                     hodge=hodge, pairing=pairing, groups=groups)


def parse(text: str) -> PerverseLefschetzInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}", "") from None
    return parse_instance(doc)


def load(path) -> PerverseLefschetzInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def save(inst: PerverseLefschetzInstance, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(inst))


# ---------------------------------------------------------------------------
# reports


def make_report(command: str, inst: PerverseLefschetzInstance, checks,
                *, seed=None, extra=None) -> dict:
    """Machine-readable verification report.

    ``checks`` is a list of ``(name, verdict, detail)`` with verdict one
    of "pass"/"fail"/"skipped"; the header pins engine version and the
    canonical instance hash so identical invocations are byte-identical.
    """
    doc = {
        "command": command,
        "engine_version": __version__,
        "instance_hash": instance_hash(inst),
        "checks": [{"name": n, "verdict": v, **({"detail": det} if det else {})}
                   for (n, v, det) in checks],
        "passed": all(v != "fail" for (_, v, _) in checks),
    }
    if seed is not None:
        doc["seed"] = seed
    if extra:
        doc.update(extra)
    return doc
