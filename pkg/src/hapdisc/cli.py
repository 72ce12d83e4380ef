"""Command-line front end.

Every subcommand writes to stdout (or ``--output``) and echoes the seed in
its header.  Exit codes: 0 ok, 1 a checked property failed, 2 bad input,
3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import zlib
from contextlib import contextmanager

import numpy as np

from . import discrepancy as dsc
from . import mulfun, pretentious, reduction, search, seqfile
from .numtheory import (
    DirichletCharacter,
    DomainError,
    count_digit,
    enumerate_characters,
    prime_table,
    quadratic_character,
)
from .sequence import SeqWindow

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

GEN_NAMES = (
    "character",
    "bcc",
    "bcc-variant",
    "vector-bcc",
    "random-bcc",
    "factorial-alt",
    "chi2-family",
    "constant",
)


class ResourceCap(Exception):
    pass


def substream(seed: int, name: str) -> np.random.SeedSequence:
    """Independent named child stream of the global seed."""
    return np.random.SeedSequence(seed, spawn_key=(zlib.crc32(name.encode()),))


# ---------------------------------------------------------------------------
# output


@contextmanager
def _output(args):
    if args.output in (None, "-"):
        yield sys.stdout
    else:
        with open(args.output, "w", newline="") as fh:
            yield fh


def _num(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, complex):
        return f"{x.real + 0.0!r},{x.imag + 0.0!r}"
    return repr(float(x))


def render_table(args, cmd: str, columns, rows, extra: dict | None = None) -> str:
    """CSV (header row plus rows) or plain ``key: value`` blocks, after a ``#`` header."""
    head = f"# hapdisc {cmd} seed={args.seed}"
    if extra:
        head += " " + " ".join(f"{k}={v}" for k, v in extra.items())
    buf = io.StringIO()
    buf.write(head + "\n")
    if args.format == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_num(v) for v in row])
    else:
        for i, row in enumerate(rows):
            if i:
                buf.write("\n")
            for c, v in zip(columns, row):
                buf.write(f"{c}: {_num(v)}\n")
    return buf.getvalue()


def _emit_table(args, cmd: str, columns, rows, extra: dict | None = None) -> None:
    text = render_table(args, cmd, columns, rows, extra)
    with _output(args) as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# function specs


def _parse_int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def _character(q: int, index: int | None):
    if index is None:
        if q > 2 and prime_table(q).is_prime(q):
            return quadratic_character(q)
        index = 1
    chars = enumerate_characters(q)
    if not 0 <= index < len(chars):
        raise DomainError(f"character index {index} outside 0..{len(chars) - 1}")
    return chars[index]


def parse_function(spec: str):
    """Function from a short spec.

    ``one``, ``bcc[:p]``, ``bcc-variant[:p]``,
    ``char:q[:index]``, ``chi2`` and ``vector-bcc:dim``; any of these may
    carry ``@t`` to twist by ``n**(i t)`` (pretentious commands only).
    """
    base, _, twist = spec.partition("@")
    parts = base.split(":")
    name, params = parts[0], parts[1:]
    try:
        ints = [int(p) for p in params]
    except ValueError:
        raise DomainError(f"bad parameters in {spec!r}") from None
    if name == "one":
        f = mulfun.CompletelyMultiplicativeFn({})
    elif name == "bcc":
        f = mulfun.bcc_function(*(ints[:1] or [3]))
    elif name == "bcc-variant":
        f = mulfun.bcc_function(*(ints[:1] or [3]), sign=-1)
    elif name == "char":
        if not ints:
            raise DomainError("char needs a modulus, e.g. char:3")
        f = _character(ints[0], ints[1] if len(ints) > 1 else None)
    elif name == "chi2":
        f = mulfun.chi2_family()
    elif name == "vector-bcc":
        f = mulfun.VectorBCC(ints[0] if ints else 8)
    else:
        raise DomainError(f"unknown function {name!r}")
    if twist:
        t = float(twist)
        if not isinstance(f, DirichletCharacter):
            raise DomainError("a twist @t is only supported on char:q")
        return pretentious.ModulatedCharacter(f, t)
    return f


# ---------------------------------------------------------------------------
# generation


def _generate(args) -> tuple[SeqWindow, str]:
    name, N = args.name, args.N
    if N < 1:
        raise DomainError("N must be >= 1")
    if name == "character":
        chi = _character(args.q, args.index)
        return mulfun.materialize(chi, N), "character"
    if name == "bcc":
        return mulfun.bcc_function(args.p).materialize(N), "pm1"
    if name == "bcc-variant":
        return mulfun.bcc_function(args.p, sign=-1).materialize(N), "pm1"
    if name == "random-bcc":
        k = max(1, int(math.floor(math.log(N, 3) + 1e-12)))
        draw = mulfun.random_bcc(k, seed=substream(args.seed, "random-bcc"))
        return draw.g.materialize(N), "pm1"
    if name == "factorial-alt":
        return mulfun.factorial_alternating(N), "pm1"
    if name == "chi2-family":
        overrides = {}
        for tok in args.override or []:
            p, j, v = (int(x) for x in tok.split(":"))
            overrides[(p, j)] = v
        return mulfun.chi2_family(overrides).materialize(N), "pm1"
    if name == "constant":
        return SeqWindow(np.ones(N)), "pm1"
    raise DomainError(f"unknown construction {name!r}")


def cmd_gen(args) -> int:
    if args.name == "vector-bcc":
        # vector values: one row per n with the index and value of the nonzero coordinate
        f = mulfun.VectorBCC(args.dim if args.dim else args.N.bit_length())
        rows = []
        for n in range(1, args.N + 1):
            v = f(n)
            a = int(np.flatnonzero(v)[0])
            rows.append((n, a, int(v[a].real)))
        _emit_table(
            argparse.Namespace(**{**vars(args), "format": "csv"}),
            "gen vector-bcc",
            ("n", "coordinate", "value"),
            rows,
        )
        return EXIT_OK
    window, kind = _generate(args)
    with _output(args) as fh:
        seqfile.dump_to(fh, window, kind, seed=args.seed, construction=args.name)
    return EXIT_OK


# ---------------------------------------------------------------------------
# discrepancy


def _load(path) -> seqfile.SeqFile:
    if path == "-":
        return seqfile.loads(sys.stdin.read())
    try:
        return seqfile.read_seqfile(path)
    except OSError as e:
        raise DomainError(f"cannot read {path}: {e}") from None


def cmd_disc(args) -> int:
    sf = _load(args.input)
    rep = dsc.hap_discrepancy(sf.window)
    _emit_table(
        args, "disc", ("N", "sup", "witness_n", "witness_d"), [(sf.N, rep.sup, rep.witness_n, rep.witness_d)]
    )
    if args.bound is not None and rep.sup > args.bound + 1e-9:
        return EXIT_VIOLATION
    return EXIT_OK


def _growth_rows(args, Ns):
    top = max(Ns)
    if args.construction == "vector-bcc":
        norms = dsc.vector_bcc_norms(top)
        best = np.maximum.accumulate(norms)
        idx = np.arange(top + 1)
        new_max = np.concatenate([[False], norms[1:] > best[:-1]])
        arg = np.maximum.accumulate(np.where(new_max, idx, 0))
        return [(N, float(best[N]), int(arg[N]), 1) for N in Ns]
    if args.input:
        window = _load(args.input).window
        if window.N < top:
            raise DomainError(f"file has N={window.N} < {top}")
    else:
        ns = argparse.Namespace(**{**vars(args), "name": args.construction, "N": top})
        window, _ = _generate(ns)
    reps = dsc.discrepancy_growth(window, Ns)
    return [(N, r.sup, r.witness_n, r.witness_d) for N, r in zip(Ns, reps)]


def cmd_growth(args) -> int:
    if args.Ns:
        Ns = _parse_int_list(args.Ns)
    elif args.powers:
        b, kmax = _parse_int_list(args.powers)
        Ns = [b**k for k in range(1, kmax + 1)]
    else:
        raise DomainError("give --Ns or --powers")
    if not Ns or min(Ns) < 1:
        raise DomainError("N values must be >= 1")
    rows = []
    for N, sup, wn, wd in _growth_rows(args, Ns):
        lg = math.log(N) / math.log(args.log_base)
        rows.append(
            (
                N,
                sup,
                wn,
                wd,
                sup / lg if lg > 0 else math.nan,
                sup / math.sqrt(lg) if lg > 0 else math.nan,
                sup / N,
            )
        )
    cols = ("N", "sup", "witness_n", "witness_d", "sup_over_log", "sup_over_sqrt_log", "sup_over_N")
    args.format = "csv"
    _emit_table(args, "growth", cols, rows, {"construction": args.construction, "log_base": args.log_base})
    return EXIT_OK


# ---------------------------------------------------------------------------
# search, CNF, certificates


def cmd_search(args) -> int:
    cfg = search.SearchConfig(args.C, args.mode, args.max_n, args.node_limit, args.time_limit)
    res = search.dfs_longest(cfg)
    if args.witness:
        seqfile.write_seqfile(
            args.witness, SeqWindow.from_signs(res.witness.values), "pm1", seed=args.seed, C=args.C, mode=args.mode
        )
    _emit_table(
        args,
        "search",
        ("C", "mode", "max_n", "n_max", "complete", "nodes"),
        [(args.C, args.mode, args.max_n, res.n_max, res.complete, res.nodes)],
    )
    return EXIT_OK if res.complete else EXIT_CAP


def cmd_cnf(args) -> int:
    text = search.emit_cnf(args.N, args.C, args.mode)
    with _output(args) as fh:
        fh.write(f"c seed={args.seed}\n")
        fh.write(text)
    return EXIT_OK


def _read_model(path, N: int) -> tuple[int, ...]:
    """Signs from a solver model file (``v``-lines or bare literals)."""
    lits = []
    with open(path) as fh:
        for line in fh:
            tok = line.split()
            if not tok or tok[0] in ("c", "s"):
                if tok[:2] == ["s", "UNSATISFIABLE"]:
                    raise DomainError("model file reports UNSATISFIABLE")
                continue
            if tok[0] == "v":
                tok = tok[1:]
            lits.extend(int(t) for t in tok)
    return search.decode_model([x for x in lits if x != 0], N)


def cmd_verify(args) -> int:
    if args.model:
        if args.N is None:
            raise DomainError("--model needs --N")
        values = _read_model(args.model, args.N)
    else:
        sf = _load(args.input)
        if not sf.window.is_pm1():
            raise DomainError("certificate must be a +-1 sequence")
        values = tuple(int(v) for v in sf.window.signs())
    cert = search.Certificate(values, args.C, args.mode)
    try:
        ok, rep = search.verify_certificate(cert)
    except search.CertificateError as e:
        _emit_table(args, "verify", ("N", "valid", "reason"), [(len(values), False, str(e))])
        return EXIT_VIOLATION
    _emit_table(
        args,
        "verify",
        ("N", "C", "mode", "valid", "sup", "witness_n", "witness_d"),
        [(cert.N, args.C, args.mode, ok, rep.sup, rep.witness_n, rep.witness_d)],
    )
    return EXIT_OK if ok else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# pretentious


def cmd_pretend(args) -> int:
    g, h = parse_function(args.g), parse_function(args.h)
    d2 = pretentious.pretentious_dist_sq(g, h, args.X)
    _emit_table(
        args,
        "pretend",
        ("g", "h", "X", "dist_sq", "dist", "mertens_sum"),
        [(args.g, args.h, args.X, d2, math.sqrt(max(d2, 0.0)), pretentious.mertens_sum(args.X))],
    )
    return EXIT_OK


def cmd_series(args) -> int:
    h = parse_function(args.h)
    tail = None if args.tail == "none" else args.tail
    S = pretentious.singular_series(h, args.X, args.P, tail=tail)
    ref = math.log(args.X) + np.euler_gamma
    _emit_table(
        args,
        "series",
        ("h", "X", "P", "tail", "value", "abs", "log_X_plus_gamma", "ratio"),
        [(args.h, args.X, args.P or args.X, args.tail, S, abs(S), ref, abs(S) / ref)],
    )
    return EXIT_OK


def cmd_corr(args) -> int:
    g = _load(args.input).window if args.input else parse_function(args.g)
    if args.window:
        val = pretentious.window_variance(g, args.window, args.X)
        cols, row = ("X", "H", "window_variance", "log_weight"), (args.X, args.window, val)
    else:
        val = pretentious.log_avg_correlation(g, args.h1, args.h2, args.X)
        cols, row = ("X", "h1", "h2", "correlation", "log_weight"), (args.X, args.h1, args.h2, val)
    _emit_table(args, "corr", cols, [row + (pretentious.log_weight_sum(args.X),)])
    return EXIT_OK


# ---------------------------------------------------------------------------
# reduction


def _group_array(args) -> tuple[reduction.GroupArray, list[int]]:
    primes = _parse_int_list(args.primes)
    f = parse_function(args.f)
    return reduction.build_F(f, primes, args.M, allow_nonunit=args.allow_nonunit), primes


def cmd_reduce(args) -> int:
    F, primes = _group_array(args)
    dist = reduction.frequency_distribution(F)
    extra = {"f": args.f, "M": args.M, "primes": ",".join(map(str, primes)), "total": repr(dist.total)}
    if args.sample:
        rng = np.random.default_rng(substream(args.seed, "sample-gX"))
        rows = [reduction.sample_frequency(dist, rng) for _ in range(args.sample)]
        cols = tuple(f"xi_{i + 1}" for i in range(F.r))
        args.format = "csv"
        _emit_table(args, "reduce", cols, rows, extra)
        return EXIT_OK
    rows = [xi + (w,) for xi, w in dist.rows() if w > args.min_weight]
    cols = tuple(f"xi_{i + 1}" for i in range(F.r)) + ("weight",)
    args.format = "csv"
    _emit_table(args, "reduce", cols, rows, extra)
    return EXIT_OK


def cmd_identity(args) -> int:
    F, primes = _group_array(args)
    lhs, rhs = reduction.discrepancy_identity_check(F, primes, args.n)
    total, mean_sq = reduction.plancherel_sums(F)
    ok = abs(lhs - rhs) <= 1e-9 * max(1.0, lhs) and abs(total - mean_sq) <= 1e-9
    _emit_table(
        args,
        "identity",
        ("f", "M", "n", "lhs", "rhs", "abs_diff", "plancherel_total", "agree"),
        [(args.f, args.M, args.n, lhs, rhs, abs(lhs - rhs), total, ok)],
    )
    return EXIT_OK if ok else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# random BCC model and quadratic forms


def cmd_mc(args) -> int:
    ns = _parse_int_list(args.n)
    rows, ok = [], True
    for n in ns:
        est = dsc.mc_second_moment(n, args.trials, substream(args.seed, f"mc:{n}"))
        expect = count_digit(n, 3, 1)
        within = abs(est.mean - expect) <= est.tolerance
        ok &= within
        rows.append((n, args.trials, est.mean, est.sem, expect, within))
    _emit_table(args, "mc", ("n", "trials", "mean", "sem", "digit_ones", "within_3sem"), rows)
    return EXIT_VIOLATION if args.check and not ok else EXIT_OK


def cmd_adversary(args) -> int:
    if args.signs:
        signs = tuple(int(t) for t in args.signs.split(","))
        draws = [signs]
    else:
        rng = np.random.default_rng(substream(args.seed, "adversary"))
        draws = [(1,) + tuple(int(s) for s in rng.choice((-1, 1), args.k)) for _ in range(args.trials)]
    rows, ok = [], True
    for signs in draws:
        n, value = dsc.adversarial_bcc(signs, check=not args.no_check)
        k = len(signs) - 1
        good = value >= (k + 1) / 2
        ok &= good
        rows.append(("".join("+" if s > 0 else "-" for s in signs), n, value, (k + 1) / 2, good))
    _emit_table(args, "adversary", ("signs", "n", "value", "bound", "meets_bound"), rows)
    return EXIT_OK if ok else EXIT_VIOLATION


def _parse_weights(text: str) -> dict:
    """``m,d:w;m,d:w`` -> {(m, d): w}."""
    out = {}
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        key, _, w = item.partition(":")
        m, d = _parse_int_list(key)
        out[(m, d)] = float(w) if w else 1.0
    return out


def cmd_qform(args) -> int:
    c = _parse_weights(args.c)
    if "," in args.b:
        b = [float(x) for x in args.b.split(",")]
    else:
        b = [float(args.b)] * args.N
    if args.N > dsc.DENSE_EIGEN_LIMIT and not args.allow_large:
        raise ResourceCap(f"N={args.N} above {dsc.DENSE_EIGEN_LIMIT}; pass --allow-large")
    psd, lam = dsc.quadratic_form_check(c, b, args.N, args.tol, allow_large=True)
    _emit_table(args, "qform", ("N", "psd", "min_eigenvalue"), [(args.N, psd, lam)])
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="64-bit unsigned seed (default 0)")
    common.add_argument("-o", "--output", help="output path (default stdout)")
    common.add_argument("--format", choices=("plain", "csv"), default="plain", help="report format")

    p = argparse.ArgumentParser(prog="hapdisc", description="Discrepancy of sequences along homogeneous progressions.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, parents=[common], help=help, description=help)
        sp.set_defaults(func=fn)
        return sp

    g = add("gen", cmd_gen, "write a construction as a sequence file")
    g.add_argument("name", choices=GEN_NAMES)
    g.add_argument("--N", type=int, required=True, help="window length")
    g.add_argument("--q", type=int, default=3, help="character modulus")
    g.add_argument("--index", type=int, help="character index (default: quadratic for odd prime q)")
    g.add_argument("--p", type=int, default=3, help="prime for bcc constructions")
    g.add_argument("--dim", type=int, help="dimension for vector-bcc")
    g.add_argument("--override", action="append", help="chi2-family twist p:j:v (repeatable)")

    d = add("disc", cmd_disc, "HAP discrepancy of a sequence file")
    d.add_argument("input", help="sequence file ('-' for stdin)")
    d.add_argument("--bound", type=float, help="exit 1 if the discrepancy exceeds this")

    gr = add("growth", cmd_growth, "discrepancy at several N as CSV")
    gr.add_argument("construction", choices=GEN_NAMES + ("file",))
    gr.add_argument("--input", help="sequence file when construction is 'file'")
    gr.add_argument("--Ns", help="comma separated N values")
    gr.add_argument("--powers", help="'b,kmax' for N = b**1..b**kmax")
    gr.add_argument("--log-base", type=float, default=math.e)
    gr.add_argument("--q", type=int, default=3)
    gr.add_argument("--index", type=int)
    gr.add_argument("--p", type=int, default=3)
    gr.add_argument("--override", action="append")

    s = add("search", cmd_search, "longest sequence with discrepancy <= C by depth-first search")
    s.add_argument("--C", type=int, required=True)
    s.add_argument("--mode", choices=search.MODES, default="general")
    s.add_argument("--max-n", type=int, default=10_000)
    s.add_argument("--node-limit", type=int, default=10**8)
    s.add_argument("--time-limit", type=float, default=300.0)
    s.add_argument("--witness", help="write the longest witness to this sequence file")

    c = add("cnf", cmd_cnf, "DIMACS CNF for discrepancy <= C at length N")
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--C", type=int, required=True)
    c.add_argument("--mode", choices=search.MODES, default="general")

    v = add("verify", cmd_verify, "check a +-1 certificate")
    v.add_argument("input", nargs="?", help="certificate sequence file")
    v.add_argument("--C", type=int, required=True)
    v.add_argument("--mode", choices=search.MODES, default="general")
    v.add_argument("--model", help="SAT solver model file instead of a sequence file")
    v.add_argument("--N", type=int, help="length to decode from --model")

    pr = add("pretend", cmd_pretend, "pretentious distance between two functions")
    pr.add_argument("--g", required=True, help="function spec, e.g. bcc, char:3, one, char:5@0.3")
    pr.add_argument("--h", required=True)
    pr.add_argument("--X", type=float, required=True)

    se = add("series", cmd_series, "Euler product with s = 1 + 1/log X")
    se.add_argument("--h", default="one")
    se.add_argument("--X", type=float, required=True)
    se.add_argument("--P", type=float, help="prime cutoff (default X)")
    se.add_argument("--tail", choices=("zeta", "none"), default="zeta")

    co = add("corr", cmd_corr, "log-averaged correlations or window variance")
    co.add_argument("--g", default="bcc")
    co.add_argument("--input", help="sequence file instead of --g")
    co.add_argument("--X", type=float, required=True)
    co.add_argument("--h1", type=int, default=1)
    co.add_argument("--h2", type=int, default=1)
    co.add_argument("--window", type=int, help="window length H; reports the window variance")

    for name, fn, text in (
        ("reduce", cmd_reduce, "frequency distribution of F on (Z/M)^r as CSV"),
        ("identity", cmd_identity, "both sides of the Fourier discrepancy identity"),
    ):
        r = add(name, fn, text)
        r.add_argument("--f", default="bcc", help="function spec")
        r.add_argument("--primes", default="2,3")
        r.add_argument("--M", type=int, default=8)
        r.add_argument("--allow-nonunit", action="store_true")
        if name == "reduce":
            r.add_argument("--min-weight", type=float, default=0.0, help="drop rows with weight <= this")
            r.add_argument("--sample", type=int, help="draw this many frequencies instead")
        else:
            r.add_argument("--n", type=int, required=True)

    m = add("mc", cmd_mc, "Monte Carlo second moment of the random BCC model")
    m.add_argument("--n", required=True, help="comma separated n values")
    m.add_argument("--trials", type=int, default=10_000)
    m.add_argument("--check", action="store_true", help="exit 1 if an estimate is off by more than 3 sem")

    a = add("adversary", cmd_adversary, "large partial sums of random BCC draws")
    a.add_argument("--signs", help="explicit signs eps_0..eps_k, e.g. 1,-1,1")
    a.add_argument("--k", type=int, default=12)
    a.add_argument("--trials", type=int, default=1)
    a.add_argument("--no-check", action="store_true", help="skip the direct summation check")

    q = add("qform", cmd_qform, "positive semi-definiteness of a HAP quadratic form")
    q.add_argument("--N", type=int, required=True)
    q.add_argument("--c", required=True, help="weights 'm,d:w;m,d:w'")
    q.add_argument("--b", required=True, help="constant or comma separated diagonal")
    q.add_argument("--tol", type=float, default=1e-9)
    q.add_argument("--allow-large", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not 0 <= args.seed < 2**64:
        parser.error("--seed must be a 64-bit unsigned integer")
    try:
        return args.func(args)
    except ResourceCap as e:
        print(f"hapdisc: resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    except (DomainError, ValueError, KeyError) as e:
        print(f"hapdisc: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
