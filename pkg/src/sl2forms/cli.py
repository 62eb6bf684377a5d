"""Command-line verification driver.

Subcommands:
  verify thm-b|thm-a|char2|lemmas   -- theorem sweeps with JSON/CSV/figure reports
  classify                          -- classify a single form over a field
  form                              -- print a named form constructor's output
  invariant-space                   -- dimension of the invariant-form space

Exit codes: 0 all verified, 1 at least one case failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import catalog, char2, descent, invariants
from .binomial import binom, kummer_divides, lemma_parity_counts, val_p_binom
from .fields import BinaryField, Field, PrimeField, Rationals
from .forms import diagonalize, parse_diagonal
from .report import CaseRecord, emit, run_report


def _primes_upto(bound: int):
    sieve = [True] * (bound + 1)
    out = []
    for p in range(2, bound + 1):
        if sieve[p]:
            out.append(p)
            for q in range(p * p, bound + 1, p):
                sieve[q] = False
    return out


def parse_field(spec: str) -> Field:
    spec = spec.strip()
    if spec == "Q":
        return Rationals()
    if spec.startswith("Fp:"):
        return PrimeField(int(spec[3:]))
    if spec.startswith("F2e:"):
        return BinaryField(int(spec[4:]))
    raise ValueError(f"bad field spec {spec!r}")


def parse_field_list(spec: str) -> list[str]:
    """Expand a field-list spec like "Q,Fp:3..97,F2e:1..3" into atoms."""
    out = []
    for part in spec.split(","):
        part = part.strip()
        if part == "Q":
            out.append("Q")
        elif part.startswith("Fp:"):
            body = part[3:]
            if ".." in body:
                lo, hi = (int(x) for x in body.split(".."))
                out += [f"Fp:{p}" for p in _primes_upto(hi) if lo <= p and p != 2]
            else:
                out.append(part)
        elif part.startswith("F2e:"):
            body = part[4:]
            if ".." in body:
                lo, hi = (int(x) for x in body.split(".."))
                out += [f"F2e:{e}" for e in range(lo, hi + 1)]
            else:
                out.append(part)
        else:
            raise ValueError(f"bad field spec {part!r}")
    return out


def parse_quaternions(spec: str) -> list[tuple[Fraction, Fraction]]:
    out = []
    for pair in spec.split(";"):
        a, b = (Fraction(x) for x in pair.split(","))
        out.append((a, b))
    return out


# --- case workers (module level so that a process pool can pickle them) -----

def _case_thm_b(payload):
    n, fspec = payload
    inputs = {"n": n, "field": fspec}
    cid = f"thm-b:n={n:06d}:field={fspec}"
    if fspec.startswith("F2e"):
        from .binomial import ones_count
        rank_even, odd_zero = char2.phi_forms_char2(n)
        want = 1 << (ones_count(n) - 1)
        ok = odd_zero and rank_even == want
        return CaseRecord(cid, inputs, f"rank {want}, odd form zero",
                          f"rank {rank_even}, odd zero={odd_zero}", ok)
    field = parse_field(fspec)
    lhs = catalog.phi_even(n, field)
    rhs = catalog.theorem_b_rhs(n, field)
    ok = invariants.isometric(lhs, rhs)
    return CaseRecord(cid, inputs, "isometric", "isometric" if ok else "distinct", ok)


def _case_thm_a_split(payload):
    (n,) = payload
    QQ = Rationals()
    lhs = diagonalize(catalog.weyl_form_gram(n, QQ))
    rhs = catalog.theorem_a_rhs(n, catalog.SPLIT_QUATERNION, QQ)
    ok = invariants.isometric(lhs, rhs)
    return CaseRecord(f"thm-a:split:n={n:06d}", {"n": n, "branch": "split"},
                      "isometric", "isometric" if ok else "distinct", ok)


def _case_thm_a_twist(payload):
    n, a, b = payload
    QQ = Rationals()
    qd = catalog.QuaternionDescriptor(Fraction(a), Fraction(b))
    inputs = {"n": n, "a": str(a), "b": str(b), "branch": "twisted"}
    cid = f"thm-a:twist:n={n:06d}:a={a}:b={b}"
    tw = descent.twisted_form(n, qd.a, qd.b)
    ok = (invariants.isometric(tw, catalog.desc_summ_form(n, qd, QQ))
          and invariants.isometric(tw, catalog.theorem_a_rhs(n, qd, QQ)))
    if n == 2:
        two = QQ.from_int(2)
        from .forms import scale
        ok = ok and invariants.isometric(tw, scale(two, catalog.quaternion_norm_prime(qd, QQ)))
    return CaseRecord(cid, inputs, "descent = closed form = theorem",
                      "agree" if ok else "disagree", ok)


def _case_char2(payload):
    n, e, a, b = payload
    field = BinaryField(e)
    inputs = {"n": n, "field": f"F2e:{e}", "a": a, "b": b}
    cid = f"char2:n={n:06d}:e={e}:a={a}:b={b}"
    got = char2.nondefective_decompose(char2.twisted_form_char2(n, a, b, field))
    want = char2.expected_twisted_class(n)
    if n == 2:
        want = char2.nondefective_decompose(char2.quaternion_char2_qprime(a, b, field))
    return CaseRecord(cid, inputs, str(want.to_json()), str(got.to_json()), got == want)


def _case_lemma_kummer(payload):
    n, p_max = payload
    primes = [p for p in _primes_upto(p_max)]
    ok = True
    c = 1
    for m in range(n + 1):
        if m:
            c = c * (n - m + 1) // m  # running C(n, m)
        for p in primes:
            digit = kummer_divides(n, m, p)
            vp = val_p_binom(n, m, p)
            direct = c % p == 0
            if not (digit == (vp > 0) == direct):
                ok = False
    return CaseRecord(f"lemmas:kummer:n={n:06d}", {"n": n, "lemma": "kummer"},
                      "digit test = carry valuation = direct mod p",
                      "agree" if ok else "disagree", ok)


def _case_lemma_parity(payload):
    n, p_max = payload
    counts = [lemma_parity_counts(n, p) for p in _primes_upto(p_max) if p != 2]
    ok = all(e == o for e, o in counts)
    return CaseRecord(f"lemmas:parity:n={n:06d}", {"n": n, "lemma": "parity"},
                      "equal counts", "equal" if ok else "unequal", ok)


_WORKERS = {
    "thm-b": _case_thm_b,
    "thm-a-split": _case_thm_a_split,
    "thm-a-twist": _case_thm_a_twist,
    "char2": _case_char2,
    "lemma-kummer": _case_lemma_kummer,
    "lemma-parity": _case_lemma_parity,
}


def _dispatch(task):
    kind, payload = task
    return _WORKERS[kind](payload)


def run_cases(tasks, jobs: int):
    if jobs <= 1:
        return [_dispatch(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_dispatch, tasks, chunksize=8))


# --- verify subcommands -----------------------------------------------------

def cmd_verify(args) -> int:
    cfg = {
        "n_max": args.n_max,
        "fields": args.fields,
        "quaternions": args.quaternions,
        "seed": args.seed,
        "jobs": args.jobs,
    }
    if args.target == "thm-b":
        cfg.setdefault("n_max", 200)
        n_max = args.n_max or 200
        fspecs = parse_field_list(args.fields or "Q,Fp:3..97")
        tasks = [("thm-b", (n, f)) for n in range(2, n_max + 1, 2) for f in fspecs]
    elif args.target == "thm-a":
        n_max = args.n_max or 100
        n_max_twist = args.n_max_twist or min(n_max, 40)
        pairs = parse_quaternions(args.quaternions or "-1,-1;2,3;-1,3;5,7")
        tasks = [("thm-a-split", (n,)) for n in range(2, n_max + 1, 2)]
        for a, b in pairs:
            if invariants.quaternion_is_split(a, b):
                continue  # the twisted branch needs a division algebra
            tasks += [("thm-a-twist", (n, str(a), str(b)))
                      for n in range(2, n_max_twist + 1, 2)]
    elif args.target == "char2":
        n_max = args.n_max or 64
        fspecs = parse_field_list(args.fields or "F2e:1..3")
        tasks = []
        for f in fspecs:
            e = int(f.split(":")[1])
            field = BinaryField(e)
            a_choices = [a for a in field.elements() if field.trace(a) == 1]
            b_choices = [b for b in range(1, field.order)][:2]
            tasks += [("char2", (n, e, a, b))
                      for n in range(2, n_max + 1, 2)
                      for a in a_choices for b in b_choices]
    elif args.target == "lemmas":
        n_max = args.n_max or 500
        p_max = args.p_max or 50
        parity_max = args.parity_n_max or 2000
        cfg.update({"p_max": p_max, "parity_n_max": parity_max})
        tasks = [("lemma-kummer", (n, p_max)) for n in range(0, n_max + 1)]
        tasks += [("lemma-parity", (n, p_max)) for n in range(2, parity_max + 1, 2)]
    else:
        raise ValueError(args.target)

    report = run_report(f"verify {args.target}", cfg,
                        lambda: run_cases(tasks, args.jobs or 1))
    emit(report, args.json, args.csv, args.figures)
    return report.exit_code


# --- other subcommands ------------------------------------------------------

def cmd_classify(args) -> int:
    field = parse_field(args.field)
    if isinstance(field, BinaryField):
        form = parse_diagonal(args.form, field)
        d = form.dim
        q = char2.QFormChar2(field, tuple(tuple(0 for _ in range(d)) for _ in range(d)),
                             form.entries)
        print(json.dumps(char2.nondefective_decompose(q).to_json()))
        return 0
    form = parse_diagonal(args.form, field)
    print(json.dumps(invariants.invariant_record(form).to_json()))
    return 0


def cmd_form(args) -> int:
    field = parse_field(args.field)
    n = args.n
    name = args.name
    if name == "phi-even":
        print(catalog.phi_even(n, field))
    elif name == "phi-odd":
        print(catalog.phi_odd(n, field))
    elif name == "weyl":
        g = catalog.weyl_form_gram(n, field)
        print(json.dumps([[field.elt_str(x) for x in row] for row in g.gram]))
    elif name == "thm-a-rhs":
        qd = catalog.QuaternionDescriptor(Fraction(args.a), Fraction(args.b))
        print(catalog.theorem_a_rhs(n, qd, field))
    elif name == "thm-b-rhs":
        print(catalog.theorem_b_rhs(n, field))
    elif name == "desc-summ":
        qd = catalog.QuaternionDescriptor(Fraction(args.a), Fraction(args.b))
        print(catalog.desc_summ_form(n, qd, field))
    else:
        raise ValueError(name)
    return 0


def cmd_invariant_space(args) -> int:
    field = parse_field(args.field)
    if args.sample.strip() == "generic":
        sample = "generic"
    else:
        sample = [field.parse(t) for t in args.sample.split(",")]
    if isinstance(field, BinaryField):
        dim = char2.invariant_qform_space_char2(args.n, field, sample)
        print(json.dumps({"dimension": dim}))
        return 0
    dim, grams = descent.invariant_form_space(args.n, field, sample)
    out = {"dimension": dim}
    if grams:
        out["basis_gram"] = [[field.elt_str(x) for x in row] for row in grams[0].gram]
    print(json.dumps(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sl2forms", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    vp = sub.add_parser("verify", help="run a theorem verification sweep")
    vp.add_argument("target", choices=["thm-b", "thm-a", "char2", "lemmas"])
    vp.add_argument("--n-max", type=int)
    vp.add_argument("--n-max-twist", type=int)
    vp.add_argument("--p-max", type=int)
    vp.add_argument("--parity-n-max", type=int)
    vp.add_argument("--fields")
    vp.add_argument("--quaternions")
    vp.add_argument("--json", metavar="PATH")
    vp.add_argument("--csv", metavar="PATH")
    vp.add_argument("--figures", metavar="DIR")
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--jobs", type=int, default=1)
    vp.add_argument("--config", metavar="PATH", help="TOML config; flags win")
    vp.set_defaults(func=cmd_verify)

    cp = sub.add_parser("classify", help="classify a diagonal form")
    cp.add_argument("--form", required=True, help='e.g. "<1,15>"')
    cp.add_argument("--field", default="Q")
    cp.set_defaults(func=cmd_classify)

    fp = sub.add_parser("form", help="print a named form")
    fp.add_argument("name", choices=["phi-even", "phi-odd", "weyl",
                                     "thm-a-rhs", "thm-b-rhs", "desc-summ"])
    fp.add_argument("--n", type=int, required=True)
    fp.add_argument("--a", default="-1")
    fp.add_argument("--b", default="-1")
    fp.add_argument("--field", default="Q")
    fp.set_defaults(func=cmd_form)

    ip = sub.add_parser("invariant-space", help="invariant-form solution space")
    ip.add_argument("--n", type=int, required=True)
    ip.add_argument("--field", default="Q")
    ip.add_argument("--sample", default="generic",
                    help='comma-separated parameters, or "generic"')
    ip.set_defaults(func=cmd_invariant_space)
    return ap


def _apply_config(args):
    if getattr(args, "config", None):
        try:
            import tomllib
        except ModuleNotFoundError:
            import tomli as tomllib

        with open(args.config, "rb") as fh:
            data = tomllib.load(fh)
        for key, value in data.items():
            attr = key.replace("-", "_")
            if getattr(args, attr, None) in (None, 0, 1) and hasattr(args, attr):
                if getattr(args, attr) is None:
                    setattr(args, attr, value)
    return args


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        args = _apply_config(args)
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
