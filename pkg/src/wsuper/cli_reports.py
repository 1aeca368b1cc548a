"""Command-line front end: run a JSON job through the pipeline and write a report."""
import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import algebra_data as ad
from . import modular as md
from . import nilpotent_frame as nf
from . import superstructure as ss
from . import walgebra as wa
from .fields import ModInt, QuadElt, fmt_rational

TASKS = ("describe", "wgens", "relations", "repsearch", "modular", "bounds", "tensorcheck")
ORDER = {t: k for k, t in enumerate(TASKS)}
CAP_ENV = "WSUPER_DEGREE_CAP"


class SpecError(ValueError):
    pass


def log(msg):
    if os.environ.get("WSUPER_QUIET") != "1":
        print(msg, file=sys.stderr)


def jsonable(x):
    """Canonical JSON values: rationals as 'p/q' strings, residues as integers."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if isinstance(x, ModInt):
        return x.v
    if isinstance(x, QuadElt):
        return {"a": fmt_rational(x.a), "b": fmt_rational(x.b), "sqrt": fmt_rational(x.q)}
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): jsonable(v)
                for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, float):
        raise TypeError("floating point value in a report")
    return str(x)


def canonical_json(report):
    return json.dumps(jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- job validation

def validate_job(job, primes_override=None):
    if not isinstance(job, dict):
        raise SpecError("job must be a JSON object")
    if "algebra" not in job:
        raise SpecError("job needs an 'algebra' entry")
    tasks = job.get("tasks")
    if not tasks or not isinstance(tasks, list):
        raise SpecError("task list must be nonempty")
    bad = [t for t in tasks if t not in TASKS]
    if bad:
        raise SpecError(f"unknown tasks: {bad}")
    D = job.get("D", 6)
    if os.environ.get(CAP_ENV):
        try:
            D = int(os.environ[CAP_ENV])
        except ValueError:
            raise SpecError(f"{CAP_ENV} must be an integer")
    if not isinstance(D, int) or D < 0:
        raise SpecError("degree cap D must be a nonnegative integer")
    primes = primes_override if primes_override else job.get("primes", [])
    for p in primes:
        if not isinstance(p, int) or p % 2 == 0 or not md.is_prime(p):
            raise SpecError(f"primes must be odd primes, got {p!r}")
    fmt = job.get("format", "json")
    if fmt not in ("json", "text"):
        raise SpecError("format must be json or text")
    return {"algebra": job["algebra"], "nilpotent": job.get("nilpotent"), "xi": job.get("xi"),
            "D": D, "primes": list(primes), "tasks": sorted(set(tasks), key=ORDER.get),
            "format": fmt, "output": job.get("output"), "lambda": job.get("lambda"),
            "search_limit": job.get("search_limit", 7)}


# ---------------------------------------------------------------- tasks

class Pipeline:
    def __init__(self, job):
        self.job = job
        try:
            self.alg = ad.algebra_from_spec(job["algebra"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"bad algebra spec: {exc}")
        try:
            self.e = nf.nilpotent_from_spec(self.alg, job["nilpotent"])
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise SpecError(f"bad nilpotent spec: {exc}")
        self._frame = None
        self._w = None
        self._table = None

    @property
    def frame(self):
        if self._frame is None:
            log("building frame")
            self._frame = nf.frame_for(self.alg, self.e)
        return self._frame

    @property
    def w(self):
        if self._w is None:
            log(f"computing invariants up to degree {self.job['D']}")
            self._w = wa.WAlgebra(self.frame, self.job["D"], progress=True)
        return self._w

    @property
    def table(self):
        if self._table is None:
            self._table = self.w.commutator_table()
        return self._table

    def describe(self):
        alg, fr = self.alg, self.frame
        out = {"algebra": alg.tag, "dims": list(alg.dims), "validation": ad.validate(alg),
               "counters": fr.counters(), "frame_checks": nf.frame_report(fr),
               "frame_constant": fr.c, "letters": [
                   {"name": n, "weight": w, "parity": p}
                   for n, w, p in zip(fr.letter_names, fr.letter_weights, fr.letter_parities)],
               "primes": {}}
        for p in self.job["primes"]:
            out["primes"][str(p)] = {
                "admissibility": md.admissibility(alg, p, fr),
                "delta": md.delta(fr, p), "delta_from_m": md.delta_from_m(fr, p),
                "dim_U_m_prime": md.delta_m_prime(fr, p),
                "reduced_w_dim": md.reduced_w_dim(fr, p), "kw_bound": md.kw_bound(fr, p),
                "matrix_size_identity": md.matrix_size_identity(fr, p)}
        return out

    def wgens(self):
        w = self.w
        q = w.q
        pbw = w.pbw_check()
        return {"generators": [{"name": g.name, "degree": g.degree, "parity": g.parity,
                                "theta": q.to_text(g.theta)} for g in w.gens],
                "invariant_dims": w.inv.per_degree(), "pbw": pbw,
                "leading_terms": wa.check_leading_terms(q, w.gens),
                "vanishing": wa.check_vanishing(self.frame, q, w.gens),
                "invariant": wa.check_invariance(self.frame, q, [g.theta for g in w.gens])}

    def relations(self):
        t = self.table
        out = {"table": t.to_json(), "text": t.to_text().splitlines(),
               "leading": {f"{i + 1},{j + 1}": v for (i, j), v in t.leading_report().items()},
               "leading_ok": t.check_leading(), "refined": t.check_refined(),
               "antisymmetry": t.check_antisymmetry(),
               "sigma": wa.check_sigma_generators(self.w),
               "gr_supercommutative": wa.check_gr_supercommutative(self.w)}
        if self.frame.r_odd:
            out["odd_extra_square"] = t.odd_extra_constant()
            wp = wa.w_prime_report(self.w)
            out["w_prime"] = wp
        out["abelianization"] = wa.abelianization_dims(t)
        return out

    def repsearch(self):
        t = self.table
        one, two = wa.onedim_system(t), wa.twodim_system(t)
        out = {"onedim": {"equations": one.text().splitlines(), "info": one.info},
               "twodim": {"equations": two.text().splitlines(), "free": [two.names[k] for k in two.free]},
               "primes": {}}
        for p in self.job["primes"]:
            rec = {}
            for label, sysm in (("onedim", one), ("twodim", two)):
                try:
                    sols = wa.search_rep_modular(sysm, p, self.job["search_limit"])
                except ValueError as exc:
                    rec[label] = {"error": str(exc)}
                    continue
                entry = {"count": len(sols), "first": sols[:3]}
                if sols and label == "twodim":
                    lift = None
                    for so in sols:
                        lift = wa.lift_solution(sysm, so, p)
                        if lift:
                            break
                    entry["lift"] = lift
                    entry["lift_verified"] = bool(lift) and wa.verify_rep(sysm, lift)["ok"]
                rec[label] = entry
            out["primes"][str(p)] = rec
        return out

    def modular(self):
        out = {}
        for p in self.job["primes"]:
            rec = {}
            malg, mf = md.modular_frame(self.alg, self.e, p)
            rec["admissibility"] = malg.admissibility
            rec["p_map_ok"] = md.check_p_map(malg)
            rec["p_map_paths_agree"] = md.check_p_map_paths(malg)
            rec["dim_reduced_env"] = md.dim_reduced_env(malg)
            rec["delta"] = md.delta(mf, p)
            rec["reduced_w_dim"] = md.reduced_w_dim(mf, p)
            rec["matrix_size_identity"] = md.matrix_size_identity(mf, p)
            size = 1
            for k in range(mf.n_ptilde):
                size *= 2 if mf.letter_parities[k] else p
            if size <= 2000:
                rec["reduced_invariants"] = md.reduced_invariants_dim(mf, p)
            try:
                lam = self.job["lambda"] if self.job["lambda"] is not None else 0
                Z = md.build_baby_verma(malg, mf, lam, p)
                irr = md.irreducibility_report(Z, mf)
                rec["baby_verma"] = {"lambda": lam, "dim": Z.dim, "dims": list(Z.dims()),
                                     "brackets": md.check_module_brackets(mf.alg, Z),
                                     "p_character": md.check_p_character(mf.alg, Z),
                                     "irreducibility": irr,
                                     "kw_divisible": md.kw_divisibility(Z.dim, mf, p)}
            except ValueError as exc:
                rec["baby_verma"] = {"skipped": str(exc)}
            out[str(p)] = rec
        return out

    def bounds(self):
        out = {}
        for p in self.job["primes"]:
            rec = {}
            fr = self.frame
            rec["nilpotent"] = {"d0": fr.d0, "d1": fr.d1, "p": p, "bound": md.kw_bound(fr, p),
                                "p_exponent": fr.d0 // 2, "two_exponent": fr.d1 // 2}
            parts = getattr(self.alg, "parts", None)
            if parts:
                data = []
                for k, part in enumerate(parts):
                    off = self.alg.offsets[k]
                    ek = self.e[off:off + part.dim]
                    frk = nf.frame_for(part, ek)
                    data.append((frk.d0, frk.d1))
                rec["direct_sum"] = ss.direct_sum_bound(data, p)
            if self.job["xi"] is not None:
                x = nf.nilpotent_from_spec(self.alg, self.job["xi"])
                rec["character"] = ss.arbitrary_char_bound(self.alg, x, p)
            out[str(p)] = rec
        return out

    def tensorcheck(self):
        out = {}
        for p in self.job["primes"]:
            out[str(p)] = md.transition_tensor_check(self.alg, self.e, p, self.job["D"])
        return out


def run(job):
    """Run every requested task; failures are isolated per task."""
    pipe = Pipeline(job)
    report = {"job": {"algebra": job["algebra"], "nilpotent": job["nilpotent"], "D": job["D"],
                      "primes": job["primes"], "tasks": job["tasks"]},
              "results": {}, "errors": {}}
    for task in job["tasks"]:
        t0 = time.perf_counter()
        log(f"task {task}: start")
        try:
            report["results"][task] = getattr(pipe, task)()
        except wa.CapTooSmall as exc:
            report["errors"][task] = {"message": str(exc), "minimal_sufficient_D": exc.needed}
        except (ValueError, ArithmeticError, KeyError) as exc:
            report["errors"][task] = {"message": f"{type(exc).__name__}: {exc}"}
        log(f"task {task}: {time.perf_counter() - t0:.2f}s")
    return report


def golden_compare(report, fixture):
    """Structural differences between a report and a fixture (dict or JSON path).
    Returns a list of {path, expected, got}, in document order."""
    if isinstance(fixture, (str, os.PathLike)):
        if not os.path.exists(fixture):
            raise FileNotFoundError(f"missing fixture {fixture}")
        with open(fixture) as fh:
            fixture = json.load(fh)
    a = json.loads(canonical_json(report))
    b = json.loads(canonical_json(fixture))
    diffs = []

    def walk(x, y, path):
        if isinstance(x, dict) and isinstance(y, dict):
            for k in sorted(set(x) | set(y)):
                if k not in x or k not in y:
                    diffs.append({"path": path + [k], "expected": y.get(k), "got": x.get(k)})
                else:
                    walk(x[k], y[k], path + [k])
        elif isinstance(x, list) and isinstance(y, list):
            for k in range(max(len(x), len(y))):
                if k >= len(x) or k >= len(y):
                    diffs.append({"path": path + [k], "expected": y[k] if k < len(y) else None,
                                  "got": x[k] if k < len(x) else None})
                else:
                    walk(x[k], y[k], path + [k])
        elif x != y:
            diffs.append({"path": path, "expected": y, "got": x})

    walk(a, b, [])
    return diffs


def to_text(report):
    lines = []

    def emit(x, indent):
        pad = "  " * indent
        if isinstance(x, dict):
            for k in sorted(x):
                v = x[k]
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}{k}:")
                    emit(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(x, list):
            for v in x:
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}-")
                    emit(v, indent + 1)
                else:
                    lines.append(f"{pad}- {v}")
        else:
            lines.append(f"{pad}{x}")

    emit(jsonable(report), 0)
    return "\n".join(lines) + "\n"


def main(argv=None):
    parser = argparse.ArgumentParser(prog="wsuper", description="finite W-superalgebra computations")
    sub = parser.add_subparsers(dest="cmd", required=True)
    pr = sub.add_parser("run", help="run a JSON job")
    pr.add_argument("--spec", required=True)
    pr.add_argument("--format", choices=("json", "text"))
    pr.add_argument("--out")
    pr.add_argument("--p", type=int, action="append", dest="primes")
    pc = sub.add_parser("compare", help="structural diff of a report against a fixture")
    pc.add_argument("report")
    pc.add_argument("fixture")
    args = parser.parse_args(argv)

    if args.cmd == "compare":
        try:
            with open(args.report) as fh:
                rep = json.load(fh)
            diffs = golden_compare(rep, args.fixture)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(json.dumps(diffs, indent=2, sort_keys=True))
        return 0 if not diffs else 3

    try:
        with open(args.spec) as fh:
            raw = json.load(fh)
        job = validate_job(raw, args.primes)
        if args.format:
            job["format"] = args.format
        if args.out:
            job["output"] = args.out
        report = run(job)
    except (OSError, json.JSONDecodeError, SpecError) as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return 2
    text = canonical_json(report) if job["format"] == "json" else to_text(report)
    if job["output"]:
        with open(job["output"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 3 if report["errors"] else 0


if __name__ == "__main__":
    sys.exit(main())
