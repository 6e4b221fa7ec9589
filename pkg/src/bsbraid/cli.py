"""Batch verification front end.

    bsbraid verify SUITE [--n N] [--m M] [--seed S] [--format json|text] ...

Every suite produces reports {suite, case, status, runtime_ms, details},
sorted by case id.  Exit status is 0 when every case passes, 1 when some case
fails or errors, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time

from . import generators as G
from .bimod import BSObject
from .complex import (associativity_holds, degree_first_order, differential_of, hom_complex_cohomology_dims,
                      one_term, random_complex, solve_homotopy_equivalence, tensor_complexes)
from .diagram import run_relation_suite

SUITES = ("relations", "frobenius", "strictness", "braid", "slides", "naturality", "cohomology", "cone", "tau")
DEFAULT_SEED = 20240521


class UsageError(ValueError):
    """Bad flag combination; reported on stderr with exit status 2."""


class CaseFailure(AssertionError):
    """Raised inside a case to report status 'fail' with details."""


def _require(cond, details=""):
    if not cond:
        raise CaseFailure(details)


def run_cases(suite: str, cases) -> list:
    """Run (case id, thunk) pairs; a thunk returns a details string or raises CaseFailure."""
    out = []
    for case, thunk in cases:
        t0 = time.perf_counter()
        try:
            details = thunk() or ""
            status = "pass"
        except CaseFailure as exc:
            status, details = "fail", str(exc)
        except Exception as exc:  # noqa: BLE001 - reported per case
            status, details = "error", f"{type(exc).__name__}: {exc}"
        out.append({"suite": suite, "case": case, "status": status,
                    "runtime_ms": round((time.perf_counter() - t0) * 1000, 3), "details": details})
    return sorted(out, key=lambda r: r["case"])


# ---------------------------------------------------------------------------
# suites

def suite_relations(args, only_prefix=None):
    reports = []
    for n in range(2, args.n + 1):
        for r in run_relation_suite(n):
            if only_prefix is None or r["case"].split("/", 1)[1].startswith(only_prefix):
                reports.append(r)
    return sorted(reports, key=lambda r: r["case"])


def suite_frobenius(args):
    reports = suite_relations(args, only_prefix="frob/")
    for r in reports:
        r["suite"] = "frobenius"
    return reports


def strictness_cases(seed: int, count: int = 100, max_n: int = 3):
    rng = random.Random(seed)
    cases = []
    triples = []
    for k in range(count):
        n = rng.randint(1, max_n)
        X, Y, Z = (random_complex(rng, n) for _ in range(3))
        A, B, C = (random_complex(rng, rng.randint(1, max_n)) for _ in range(3))
        triples.append((X, Y, Z))
        cases.append((f"triple/{k:03d}/hcomp", lambda X=X, Y=Y, Z=Z: _require(associativity_holds(X, Y, Z))))
        cases.append((f"triple/{k:03d}/box", lambda A=A, B=B, C=C: _require(associativity_holds(A, B, C, "box"))))

    def nonstrict():
        bad = [k for k, (X, Y, Z) in enumerate(triples) if not associativity_holds(X, Y, Z, order=degree_first_order)]
        _require(bad, "degree-first ordering happened to be associative on every sample")
        return f"degree-first ordering breaks associativity on {len(bad)} of {len(triples)} triples"
    cases.append(("nonstrict/degree-first", nonstrict))
    return cases


def suite_strictness(args):
    return run_cases("strictness", strictness_cases(args.seed, args.count, min(args.n, 3)))


def _equivalence_case(n, w1, w2):
    from .rouquier import BraidWord, rouquier_of_word

    def run():
        X = rouquier_of_word(BraidWord(n, w1))
        Y = rouquier_of_word(BraidWord(n, w2))
        eq = solve_homotopy_equivalence(X, Y)
        _require(eq is not None, "no homotopy equivalence found")
        _require(eq.verify(), "certificate failed verification")
        return (f"f: {len(eq.f.comps)} comps, g: {len(eq.g.comps)} comps, "
                f"h_source: {len(eq.h_source.comps)} comps, h_target: {len(eq.h_target.comps)} comps")
    return run


def braid_cases(n: int, word=None, against=None, max_len: int = 4):
    from .rouquier import BraidWord, parse_braid_word, r2_structure_maps, rouquier_of_word

    if word is not None:
        w1 = parse_braid_word(word, n).letters
        w2 = parse_braid_word(against or "", n).letters
        return [(f"equivalence/{' '.join(map(str, w1)) or '()'}~{' '.join(map(str, w2)) or '()'}",
                 _equivalence_case(n, w1, w2))]
    cases = []
    for nn in range(2, n + 1):
        letters = [s * i for i in range(1, nn) for s in (1, -1)]
        for L in range(1, max_len + 1):
            def dsq(nn=nn, L=L, letters=letters):
                words = list(itertools.product(letters, repeat=L))
                bad = [w for w in words if not rouquier_of_word(BraidWord(nn, w)).d_squared_zero()]
                _require(not bad, f"d^2 != 0 for {bad[:3]}")
                return f"{len(words)} words"
            cases.append((f"dsquared/n={nn}/len={L}", dsq))
        for i in range(1, nn):
            for s in (1, -1):
                cases.append((f"r2/n={nn}/{s * i},{-s * i}", _equivalence_case(nn, (s * i, -s * i), ())))

                def nose(nn=nn, i=i, s=s):
                    d = r2_structure_maps(nn, i, s)
                    R = d.ev.target
                    _require(d.ev.compose(d.coev_p) == R.identity(), "ev . coev' != id")
                    _require(d.ev_p.compose(d.coev) == R.identity(), "ev' . coev != id")
                    return f"{len(d.homotopies)} relations certified up to homotopy"
                cases.append((f"onthenose/n={nn}/{s * i}", nose))
        for i in range(1, nn - 1):
            cases.append((f"braid/n={nn}/{i},{i + 1},{i}", _equivalence_case(nn, (i, i + 1, i), (i + 1, i, i + 1))))
    return cases


def suite_braid(args):
    if args.word is not None and args.against is None:
        raise UsageError("--word needs --against")
    return run_cases("braid", braid_cases(args.n, args.word, args.against))


def slide_cases(n: int):
    from .slide import atomic_slide, slide_for_word, slide_generator, slide_prime

    cases = []
    for kind in ("12", "21"):
        def atomic(kind=kind):
            s = atomic_slide(kind)
            _require(s.verify(), "atomic slide not certified")
            _require(s.info.get("H0") == 1, f"dim H^0 = {s.info.get('H0')}")
            return f"dim H^0 = 1, anchor {s.info.get('anchor')}"
        cases.append((f"atomic/{kind}", atomic))
    for (m, nn, side, j) in ((1, 2, "1B", 1), (2, 1, "B1", 1), (1, 3, "1B", 2), (3, 1, "B1", 2),
                             (2, 2, "1B", 1), (2, 2, "B1", 1)):
        if m + nn > n + 1:
            continue

        def gen(m=m, nn=nn, side=side, j=j):
            s = slide_generator(m, nn, side, j)
            _require(s.verify(), "generator slide not certified")
        cases.append((f"generator/({m},{nn})/{side}/{j}", gen))
    words = [((), (1,), 1, 2), ((), (1, 2, 1), 1, 3), ((1,), (1,), 2, 2), ((), (1, 1), 1, 2),
             ((2,), (), 3, 1), ((), (1, 3), 1, 4)]
    for Y1, Y2, m, nn in words:
        if m + nn > n + 1:
            continue

        def word(Y1=Y1, Y2=Y2, m=m, nn=nn):
            s = slide_for_word(Y1, Y2, m, nn, certify=True)
            _require(s.verify(), "word slide not certified")
        cases.append((f"word/({m},{nn})/{Y1}|{Y2}", word))
    for Y1, Y2, m, nn in (((), (1,), 1, 2), ((1,), (), 2, 1)):
        def prime(Y1=Y1, Y2=Y2, m=m, nn=nn):
            s = slide_prime(Y1, Y2, m, nn, certify=True)
            _require(s.verify(), "inverse-crossing slide not certified")
        cases.append((f"prime/({m},{nn})/{Y1}|{Y2}", prime))
    return cases


def suite_slides(args):
    return run_cases("slides", slide_cases(max(args.n, 3)))


def naturality_cases(generator=None, lemmas=True):
    from .naturality import generator_cases, naturality_defect, solve_slide_homotopy

    table = generator_cases()
    names = [name for name, _, _ in table]
    if generator is not None and generator not in names:
        raise UsageError(f"unknown generator {generator!r}; choose from {', '.join(names)}")
    cases = []
    for name, f, expect_zero in table:
        if generator is not None and name != generator:
            continue

        def run(f=f, expect_zero=expect_zero):
            delta = naturality_defect(f)
            _require(delta.is_closed(), "defect is not closed")
            if expect_zero:
                _require(delta.is_zero(), "defect expected to vanish:\n" + delta.render())
                return "defect = 0; h = 0"
            _require(not delta.is_zero(), "defect expected to be nonzero")
            h = solve_slide_homotopy(f)
            _require(differential_of(h) == delta, "d(h) != defect")
            return f"defect nonzero ({len(delta.comps)} comps); homotopy found:\n" + h.render()
        cases.append((f"generator/{name}", run))
    if lemmas and generator is None:
        cases.append(("lemmas", _lemma_suite))
    return cases


def _lemma_suite():
    from .naturality import higher_homotopy, lemma_instances, naturality_defect

    lines = []
    for case, f, h in lemma_instances():
        _require(differential_of(h) == naturality_defect(f), f"{case}: d-check failed")
        _require(higher_homotopy(h, f) is not None, f"{case}: no higher homotopy to the direct solve")
        lines.append(f"{case}: d-check exact, higher homotopy found")
    return "\n".join(lines)


def suite_naturality(args):
    return run_cases("naturality", naturality_cases(args.generator))


def cohomology_cases(n: int, qwindow=range(-2, 3)):
    from .rouquier import cabled_crossing

    cases = []
    for nn in range(1, n + 1):
        words = [()] + [(c,) for c in range(1, nn)] + [(a, b) for a in range(1, nn) for b in range(1, nn)]
        for Y in words:
            def run(nn=nn, Y=Y):
                X = cabled_crossing(1, nn)
                A = tensor_complexes(X, one_term(BSObject(nn + 1, tuple(c + 1 for c in Y))))
                B = tensor_complexes(one_term(BSObject(nn + 1, Y)), X)
                window = range(-nn - 1, nn + 2)
                out = []
                for q in qwindow:
                    dims = dict(zip(window, hom_complex_cohomology_dims(A, B, q, window)))
                    bad = {k: v for k, v in dims.items() if k and v}
                    _require(not bad, f"q={q}: nonzero H^k outside degree 0: {bad}")
                    out.append(f"q={q}: H^0={dims[0]}")
                return ", ".join(out)
            cases.append((f"n={nn}/Y={Y}", run))
    return cases


def suite_cohomology(args):
    return run_cases("cohomology", cohomology_cases(min(args.n, 3)))


def cone_cases(seed: int):
    from .naturality import BoxMorphism, cone_slide, random_box_morphism

    def run(f):
        c = cone_slide(f)
        _require(c.verify(), "cone slide not certified")
        return f"chain map with {len(c.chain.comps)} comps; certified"

    sd = BoxMorphism.right(G.startdot(2, 1), 1, 2, "sd")
    zero = BoxMorphism.right(G.startdot(2, 1).scale(0), 1, 2, "zero")
    ident = BoxMorphism.ident(1, 2, (), (1,))
    return [
        ("startdot", lambda: run(sd)),
        (f"random/seed={seed}", lambda: run(random_box_morphism(1, 2, (1,), (1, 1), 1, seed))),
        ("zero", lambda: run(zero)),
        ("identity", lambda: run(ident)),
    ]


def suite_cone(args):
    return run_cases("cone", cone_cases(args.seed))


def tau_cases(r_max: int, seed: int, samples: int = 12):
    from .naturality import _bar, a_infinity_pair, dot_order_homotopies, tau_base, tau_extend, tau_generators
    from .complex import solve_homotopy

    cases = []
    for m, n in ((1, 1), (1, 2)):
        def table(m=m, n=n):
            t = tau_extend(tau_base(m, n, r_max), r_max)
            res = t.check_chain_map()
            bad = [repr(e) for e, ok in res if not ok]
            _require(not bad, f"chain-map property fails on {bad[:5]}")
            counts = {}
            for e, _ in res:
                counts[e.r] = counts.get(e.r, 0) + 1
            return "stored elements by length: " + ", ".join(f"r={r}: {c}" for r, c in sorted(counts.items()))
        cases.append((f"table/({m},{n})/R={r_max}", table))

        def ainf(m=m, n=n):
            rng = random.Random(seed)
            t = tau_base(m, n, 1)
            gens = tau_generators(m, n)
            objs = sorted({g.source_words for g in gens} | {g.target_words for g in gens})
            done = 0
            for _ in range(samples):
                g = rng.choice(gens)
                o = rng.choice(objs)
                a, b = (_bar((g,), None), _bar((), o)) if rng.random() < 0.5 else (_bar((), o), _bar((g,), None))
                delta, t2 = a_infinity_pair(t, a, b)
                _require(differential_of(t2) == delta, "d tau_2 != obstruction")
                done += 1
            return f"{done} sampled pairs satisfy the k=2 identity"
        cases.append((f"a-infinity/({m},{n})/seed={seed}", ainf))

    def run_dot_order():
        hA, hB, t, explicit = dot_order_homotopies()
        _require(t is not None, "no higher homotopy between the two dot orders")
        _require(differential_of(t) == hA - hB, "d(t) != hA - hB")
        rest = t + explicit
        _require(differential_of(rest).is_zero(), "t differs from the explicit composite by a non-closed term")
        _require(rest.is_zero() or solve_homotopy(rest) is not None, "difference to the explicit composite is not exact")
        return "d(explicit composite) = hB - hA; solver antiderivative agrees up to an exact term"
    cases.append(("dot-order", run_dot_order))
    return cases


def suite_tau(args):
    return run_cases("tau", tau_cases(args.max_bar_length, args.seed))


RUNNERS = {
    "relations": suite_relations,
    "frobenius": suite_frobenius,
    "strictness": suite_strictness,
    "braid": suite_braid,
    "slides": suite_slides,
    "naturality": suite_naturality,
    "cohomology": suite_cohomology,
    "cone": suite_cone,
    "tau": suite_tau,
}


# ---------------------------------------------------------------------------
# entry point

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bsbraid", description="Exact verification of Bott-Samelson and braiding data.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--n", type=int, default=None, help="strand bound (suite-dependent default)")
    v.add_argument("--m", type=int, default=1, help="left cable size where relevant")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"seed for randomized suites (default {DEFAULT_SEED})")
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--max-bar-length", type=int, default=2, help="bar-length truncation for the tau suite")
    v.add_argument("--word", default=None, help='braid word, e.g. "1 2 1"')
    v.add_argument("--against", default=None, help="second braid word for --word")
    v.add_argument("--generator", default=None, help="restrict the naturality suite to one generator")
    v.add_argument("--count", type=int, default=100, help="number of random triples for strictness")
    v.add_argument("--stable", action="store_true", help="report runtime_ms as 0 so reruns are byte-identical")
    v.add_argument("--output", default=None, help="also write the report to this file")
    return p


_DEFAULT_N = {"relations": 4, "frobenius": 4, "strictness": 3, "braid": 4, "slides": 3, "naturality": 3,
              "cohomology": 3, "cone": 2, "tau": 2}


def render_text(reports) -> str:
    lines = []
    for r in reports:
        lines.append(f"[{r['status'].upper():5}] {r['suite']} {r['case']} ({r['runtime_ms']} ms)")
        if r["details"] and (r["status"] != "pass" or len(reports) <= 12):
            lines.extend("    " + ln for ln in str(r["details"]).splitlines())
    passed = sum(r["status"] == "pass" for r in reports)
    lines.append(f"{passed}/{len(reports)} cases passed")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.n is None:
        args.n = _DEFAULT_N[args.suite]
    if args.n < 1 or args.m < 1 or args.max_bar_length < 0 or args.count < 0:
        print("bsbraid: error: sizes must be positive", file=sys.stderr)
        return 2
    try:
        reports = RUNNERS[args.suite](args)
    except UsageError as exc:
        print(f"bsbraid: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"bsbraid: error: {exc}", file=sys.stderr)
        return 2
    if args.stable:
        for r in reports:
            r["runtime_ms"] = 0
    text = json.dumps(reports, indent=2, sort_keys=True) if args.format == "json" else render_text(reports)
    print(text)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0 if all(r["status"] == "pass" for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
