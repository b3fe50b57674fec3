"""Command-line front end: emits the exact tables and runs the verifications.

Exit codes: 0 success, 1 usage error, 2 verification mismatch.  Output
formats: text (pretty), csv (data rows only), json (schema-stable documents
with title/columns/rows/provenance).  Integers beyond 53 bits are serialized
as strings in JSON so downstream tools cannot silently round them.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import cyclic, exactlin, freelie, grouppres, johnson, tangent
from .cyclic import QuotientMode

CACHE_ENV = "JW_CACHE_DIR"
CACHE_VERSION = 1


class UsageError(Exception):
    pass


@dataclass
class TableDocument:
    title: str
    columns: list
    rows: list
    provenance: str

    def to_json_obj(self):
        return {
            "title": self.title,
            "columns": list(self.columns),
            "rows": [[_json_value(v) for v in row] for row in self.rows],
            "provenance": self.provenance,
        }


def _json_value(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return str(v) if abs(v) >= 2**53 else v
    if isinstance(v, (tuple, list)):
        return [_json_value(x) for x in v]
    return str(v)


def _render(doc: TableDocument, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc.to_json_obj(), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        lines = []
        for row in doc.rows:
            lines.append(",".join(_csv_cell(v) for v in row))
        return "\n".join(lines) + "\n"
    widths = [len(str(c)) for c in doc.columns]
    srows = []
    for row in doc.rows:
        srow = [_csv_cell(v) for v in row]
        widths = [max(w, len(s)) for w, s in zip(widths, srow)]
        srows.append(srow)
    out = [doc.title]
    out.append("  ".join(str(c).ljust(w) for c, w in zip(doc.columns, widths)))
    for srow in srows:
        out.append("  ".join(s.ljust(w) for s, w in zip(srow, widths)))
    return "\n".join(out) + "\n"


def _csv_cell(v):
    if isinstance(v, (tuple, list)):
        return "(" + " ".join(str(x) for x in v) + ")"
    return str(v)


def _emit(args, doc_or_text):
    text = doc_or_text if isinstance(doc_or_text, str) else _render(doc_or_text, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_range(spec: str):
    spec = str(spec)
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


def _structure_json(q: exactlin.QuotientStructure) -> str:
    obj = {"free_rank": q.free_rank, "torsion": [_json_value(d) for d in q.torsion]}
    return json.dumps(obj) + "\n"


def _structure_doc(title, q, provenance):
    return TableDocument(
        title, ["free_rank", "torsion"], [[q.free_rank, list(q.torsion)]], provenance
    )


# ---------------------------------------------------------------------------
# basis cache (versioned JSON of basis words per (n, k))


def _cache_path(directory, n, k):
    return os.path.join(directory, f"lyndon_n{n}_k{k}.json")


def save_basis(directory, n, k):
    os.makedirs(directory, exist_ok=True)
    words = [list(w) for w in freelie.lyndon_words(n, k)]
    payload = {"version": CACHE_VERSION, "n": n, "k": k, "words": words}
    path = _cache_path(directory, n, k)
    try:
        with open(path, "w") as fh:
            json.dump(payload, fh)
    except OSError as exc:
        raise OSError(f"cannot write basis cache {path}: {exc}") from exc
    return path


def load_basis(directory, n, k):
    """Load a cached word list; None on miss or version/shape mismatch."""
    path = _cache_path(directory, n, k)
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except FileNotFoundError:
        return None
    except (OSError, json.JSONDecodeError) as exc:
        raise OSError(f"cannot read basis cache {path}: {exc}") from exc
    if (
        not isinstance(payload, dict)
        or payload.get("version") != CACHE_VERSION
        or payload.get("n") != n
        or payload.get("k") != k
    ):
        return None
    return [tuple(w) for w in payload["words"]]


def load_or_build_basis(directory, n, k):
    if directory:
        cached = load_basis(directory, n, k)
        if cached is not None:
            return cached
    words = list(freelie.lyndon_words(n, k))
    if directory:
        save_basis(directory, n, k)
    return words


def cache_roundtrip(directory, n, k) -> bool:
    """Save then reload the (n, k) basis; True iff the ordered list survives."""
    save_basis(directory, n, k)
    return load_basis(directory, n, k) == list(freelie.lyndon_words(n, k))


# ---------------------------------------------------------------------------
# commands


def _cmd_witt(args):
    ns = _parse_range(args.n)
    ks = _parse_range(args.k)
    rows = [[n, k, freelie.witt_rank(n, k)] for n in ns for k in ks]
    if args.format == "csv":
        # flat value list; one row of ranks in (n, k) order
        doc = TableDocument("witt", [f"r({n},{k})" for n in ns for k in ks],
                            [[r[2] for r in rows]], _prov(args))
    else:
        doc = TableDocument("free Lie algebra ranks", ["n", "k", "rank"], rows, _prov(args))
    _emit(args, doc)
    return 0


def _cmd_ranks(args):
    rows = []
    for n in _parse_range(args.n):
        for k in _parse_range(args.k):
            rows.append(
                [
                    n,
                    k,
                    freelie.witt_rank(n, k),
                    cyclic.cyclic_rank(n, k, QuotientMode.FULL),
                    cyclic.cyclic_rank(n, k, QuotientMode.BAR),
                    tangent.p_rank(n, k),
                ]
            )
    doc = TableDocument(
        "rank table",
        ["n", "k", "lie_rank", "necklaces", "necklaces_bar", "tangential_rank"],
        rows,
        _prov(args),
    )
    _emit(args, doc)
    return 0


def _cmd_trace(args):
    n, k = args.n, args.k
    mode = QuotientMode.coerce(args.mode)
    image = johnson.trace_rank(n, k, mode)
    target = cyclic.cyclic_rank(n, k, mode)
    dim = tangent.p_rank(n, k)
    doc = TableDocument(
        f"trace map, mode={mode.value}",
        ["n", "k", "domain_rank", "image_rank", "kernel_dim", "target_rank", "surjective"],
        [[n, k, dim, image, dim - image, target, image == target]],
        _prov(args),
    )
    _emit(args, doc)
    return 0


def _progress(msg):
    # diagnostics go to stderr so the data stream stays machine parseable
    print(msg, file=sys.stderr, flush=True)


def _cmd_image(args):
    rows = []
    for k in range(1, args.k + 1):
        if k >= 7:
            _progress(f"computing degree {k} span ...")
        rows.append([k, johnson.johnson_image(args.n, k).dim])
    doc = TableDocument(
        "degree-1 generated image dimensions", ["k", "dim"], rows, _prov(args)
    )
    _emit(args, doc)
    return 0


def _cmd_calpha(args):
    if args.alpha:
        alphas = [tuple(int(x) for x in args.alpha.split(","))]
        rows_src = [(sum(a), a) for a in alphas]
    else:
        from ._words import partitions

        rows_src = [
            (args.k, alpha)
            for alpha in partitions(args.k, min_part=2)
            if len(alpha) >= 2
        ]
    reports = _parallel_map(
        args.threads, lambda ka: johnson.c_alpha(ka[0], ka[1]), rows_src
    )
    rows = [
        [k, list(rep.alpha), rep.c_alpha, rep.r_alpha]
        for (k, _), rep in zip(rows_src, reports)
    ]
    doc = TableDocument(
        "trace ranks by content", ["k", "alpha", "c", "r"], rows, _prov(args)
    )
    _emit(args, doc)
    return 0


def _cmd_table7(args):
    rows = johnson.section7_rows(args.n)
    doc = TableDocument(
        f"degree 1..4 summary, n={args.n}",
        ["k", "graded_rank", "tangential_rank", "cyclic_bar_rank", "coker"],
        rows,
        _prov(args),
    )
    _emit(args, doc)
    return 0


def _cmd_table8(args):
    from ._words import partitions

    keys = [
        (k, alpha)
        for k in range(5, args.kmax + 1)
        for alpha in partitions(k, min_part=2)
        if len(alpha) >= 2
    ]
    reports = _parallel_map(args.threads, lambda ka: johnson.c_alpha(*ka), keys)
    rows = [[k, list(rep.alpha), rep.c_alpha, rep.r_alpha] for (k, _), rep in zip(keys, reports)]
    doc = TableDocument(
        "trace ranks for repeated-letter contents", ["k", "alpha", "c", "r"], rows, _prov(args)
    )
    _emit(args, doc)
    return 0


def _cmd_n3gap(args):
    rows = []
    for k in range(1, args.kmax + 1):
        if k >= 7:
            _progress(f"computing degree {k} span ...")
        rows.append([k, johnson.johnson_image(3, k).dim, johnson.trace_kernel_dim(3, k)])
    doc = TableDocument(
        "image vs trace kernel, n=3",
        ["k", "image_dim", "kernel_dim"],
        rows,
        _prov(args),
    )
    _emit(args, doc)
    return 0


def _cmd_coker(args):
    q = johnson.coker_structure(args.n, args.k)
    if args.format == "json":
        _emit(args, _structure_json(q))
    else:
        _emit(args, _structure_doc(f"trace cokernel n={args.n} k={args.k}", q, _prov(args)))
    return 0


def _cmd_t0530(args):
    rep = johnson.check_T0530(args.n, args.k)
    rows = [[list(a), d, True] for a, d in rep.checked]
    rows += [[list(a), "-", "skipped"] for a in rep.skipped]
    doc = TableDocument(
        f"kernel-in-image check n={args.n} k={args.k}",
        ["alpha", "kernel_dim", "status"],
        rows,
        _prov(args),
    )
    _emit(args, doc)
    if not rep.ok:
        print(f"violations: {rep.violations}", file=sys.stderr)
        return 2
    return 0


def _cmd_egens(args):
    rep = johnson.verify_E_generators(args.n)
    doc = TableDocument(
        f"degree-3 generator families n={args.n}",
        ["family_counts", "total", "expected", "span_dim", "image_dim", "ok"],
        [[list(rep.family_counts), rep.total, rep.expected, rep.span_dim, rep.image_dim, rep.ok]],
        _prov(args),
    )
    _emit(args, doc)
    return 0 if rep.ok else 2


def _cmd_h1(args):
    if args.group == "file":
        if not args.file:
            raise UsageError("--group file needs --file PATH")
        with open(args.file) as fh:
            pres = grouppres.parse_presentation(fh.read())
        if args.rep != "trivial":
            raise UsageError("file presentations support --rep trivial only")
        action = grouppres.trivial_action(pres)
    else:
        pres = grouppres.builtin(args.group, args.n)
        if args.rep == "trivial":
            action = grouppres.trivial_action(pres)
        else:
            action = grouppres.standard_action(args.group, args.n)
    q = grouppres.h1_twisted(pres, action)
    if args.format == "json":
        _emit(args, _structure_json(q))
    else:
        _emit(args, _structure_doc(f"twisted H1, {args.group}", q, _prov(args)))
    return 0


def _cmd_h2(args):
    try:
        value = grouppres.h2_psigma_rank(args.n)
    except grouppres.InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return 2
    doc = TableDocument(
        f"second homology rank, n={args.n}", ["n", "rank"], [[args.n, value]], _prov(args)
    )
    _emit(args, doc)
    return 0


def _cmd_abelianize(args):
    if args.group == "file":
        if not args.file:
            raise UsageError("--group file needs --file PATH")
        with open(args.file) as fh:
            pres = grouppres.parse_presentation(fh.read())
    else:
        pres = grouppres.builtin(args.group, args.n)
    q = grouppres.abelianization(pres)
    if args.format == "json":
        _emit(args, _structure_json(q))
    else:
        _emit(args, _structure_doc(f"abelianization, {args.group}", q, _prov(args)))
    return 0


def _prov(args):
    return " ".join(args._argv)


def _warm_cache(args):
    """Persist (and reuse) basis word lists under --cache / JW_CACHE_DIR."""
    directory = getattr(args, "cache", None)
    if not directory:
        return
    n = getattr(args, "n", None)
    k = getattr(args, "k", None)
    try:
        ns = _parse_range(n) if n is not None else []
        ks = _parse_range(k) if k is not None else []
    except (TypeError, ValueError):
        return
    for nn in ns:
        for kk in ks:
            if nn >= 2 and 1 <= kk <= 12:
                load_or_build_basis(directory, nn, kk)


def _parallel_map(threads, fn, items):
    """Map preserving order; worker pool only when threads > 1."""
    items = list(items)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="lietrace", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=["text", "csv", "json"], default="text")
        p.add_argument("--out", default=None)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--cache", default=os.environ.get(CACHE_ENV))
        return p

    p = add("witt", _cmd_witt, help="free Lie algebra ranks")
    p.add_argument("--n", required=True)
    p.add_argument("--k", required=True)

    p = add("ranks", _cmd_ranks, help="rank tables (Lie, necklace, tangential)")
    p.add_argument("--n", required=True)
    p.add_argument("--k", required=True)

    p = add("trace", _cmd_trace, help="trace matrix ranks for one (n, k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=["full", "bar", "tilde"], default="bar")

    p = add("image", _cmd_image, help="degree-1 generated image dimensions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("calpha", _cmd_calpha, help="trace rank for one content class")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", default=None, help="comma list, e.g. 3,2,2")

    p = add("table7", _cmd_table7, help="degree 1..4 summary table")
    p.add_argument("--n", type=int, required=True)

    p = add("table8", _cmd_table8, help="c/r table for repeated-letter contents")
    p.add_argument("--kmax", type=int, required=True)

    p = add("n3gap", _cmd_n3gap, help="image vs kernel table for n=3")
    p.add_argument("--kmax", type=int, required=True)

    p = add("coker", _cmd_coker, help="integral trace cokernel structure")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("t0530", _cmd_t0530, help="kernel-in-image check per content")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("egens", _cmd_egens, help="degree-3 generator family check")
    p.add_argument("--n", type=int, required=True)

    p = add("h1", _cmd_h1, help="twisted first cohomology")
    p.add_argument("--group", choices=["bp", "braid", "sym", "file"], required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--rep", choices=["standard", "trivial"], default="standard")
    p.add_argument("--file", default=None)

    p = add("h2", _cmd_h2, help="second homology rank with consistency check")
    p.add_argument("--n", type=int, required=True)

    p = add("abelianize", _cmd_abelianize, help="abelianization structure")
    p.add_argument("--group", choices=["bp", "braid", "sym", "mccool", "file"], required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--file", default=None)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_usage(sys.stderr)
            return 1
        args._argv = [args.command] + [a for a in argv[1:]]
        _warm_cache(args)
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
