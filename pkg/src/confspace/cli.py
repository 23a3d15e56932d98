"""Command-line front end.

Every command writes deterministic output (JSON by default) that records the
seed, the tool version and a SHA-256 digest of each input file. Exit codes:
0 success, 2 usage, 3 invalid input data, 4 runtime failure. Failures print
one JSON line on stderr.
"""

import argparse
import hashlib
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .cart import CartParams, RegressionTree, fit
from .dataset import DatasetError, load_csv, shuffle_split
from .intrinsic import DimensionError, intrinsic_dimension
from .optimize import ClauseValidity, DeParams, OptimizationError, de_optimize
from .rig import DEFAULT_FRACTIONS, run_rig
from .sampling import POLICIES, Policy, SamplingError
from .stats import scott_knott
from .synthetic import additive_dataset

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_RUNTIME = 0, 2, 3, 4


class CliError(Exception):
    def __init__(self, code, kind, message):
        super().__init__(message)
        self.code = code
        self.kind = kind


def usage(msg):
    return CliError(EXIT_USAGE, "usage", msg)


def data_error(msg):
    return CliError(EXIT_DATA, "data", msg)


def digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def header(command, seed, inputs=()):
    return {
        "tool": "confspace",
        "version": __version__,
        "command": command,
        "seed": seed,
        "inputs": inputs if isinstance(inputs, dict) else {str(p): digest(p) for p in inputs},
    }


def dump_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def emit(text, out=None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def parse_fractions(text):
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise usage(f"bad --fractions {text!r}") from None
    if not vals or any(not 0 < v < 1 for v in vals):
        raise usage("--fractions must be comma-separated values in (0, 1)")
    return vals


def load_data(path, target=None):
    if not Path(path).is_file():
        raise data_error(f"missing file: {path}")
    return load_csv(path, target=target)


def make_policy(args):
    try:
        return Policy(args.policy, args.leaf_multiplier, args.k, args.rounds)
    except (SamplingError, ValueError) as exc:
        raise usage(str(exc)) from None


def make_cart(args):
    try:
        return CartParams(args.min_samples_split, args.min_samples_leaf, args.max_depth)
    except ValueError as exc:
        raise usage(str(exc)) from None


# -- commands -----------------------------------------------------------------


def cmd_rig(args):
    ds = load_data(args.data, args.target)
    fractions = parse_fractions(args.fractions)
    if args.repeats < 1:
        raise usage("--repeats must be >= 1")
    report = run_rig(ds, make_policy(args), fractions, args.repeats, args.seed, make_cart(args))
    if args.format == "text":
        return report.to_text()
    if args.format == "csv":
        return report.to_csv()
    body = header("rig", args.seed, [args.data])
    body["cart"] = vars(make_cart(args))
    body["report"] = report.to_dict(args.elbow_tolerance)
    return dump_json(body)


def _pool(args, ds):
    """Rows the policy draws from: the train side of a split, or the whole table."""
    if args.fraction is None:
        return ds, np.arange(len(ds)), None
    split = shuffle_split(ds, args.fraction, args.seed)
    return split.train, np.array(split.train_index), split


def cmd_sample(args):
    ds = load_data(args.data, args.target)
    pool, to_row, _ = _pool(args, ds)
    plan, tree = make_policy(args).plan(pool, args.seed)
    body = header("sample", args.seed, [args.data])
    body["fraction"] = args.fraction
    body["plan"] = {
        "policy": plan.policy,
        "rows": [int(to_row[i]) for i in plan.indices],
        "evaluations": plan.evaluations,
    }
    if tree is not None:
        body["n_leaves"] = len(tree.leaves())
        body["threshold"] = tree.threshold
        if args.tree:
            body["tree"] = tree.to_dict()
    return dump_json(body)


def cmd_train(args):
    ds = load_data(args.data, args.target)
    pool, to_row, split = _pool(args, ds)
    policy = make_policy(args)
    plan, _ = policy.plan(pool, args.seed)
    model = fit(plan.chosen(pool), params=make_cart(args))
    body = header("train", args.seed, [args.data])
    body.update(
        {
            "feature_names": list(ds.feature_names),
            "policy": policy.to_dict(),
            "cart": vars(make_cart(args)),
            "fraction": args.fraction,
            "evaluations": plan.evaluations,
            "sample_rows": [int(to_row[i]) for i in plan.indices],
            "model": model.to_dict(),
        }
    )
    if split is not None:
        from .stats import mean_mre

        body["test_mean_mre"] = mean_mre(model.predict_many(split.test.X), split.test.y)
    text = dump_json(body)
    if args.out:
        emit(text, args.out)
        return dump_json({"model": str(args.out), "evaluations": plan.evaluations})
    return text


def _load_model(path):
    try:
        with open(path) as fh:
            obj = json.load(fh)
        return RegressionTree.from_dict(obj.get("model", obj)), obj.get("feature_names")
    except FileNotFoundError:
        raise data_error(f"missing file: {path}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise data_error(f"bad model file {path}: {exc}") from None


def cmd_optimize(args):
    model, names = _load_model(args.model)
    arity = args.arity if args.arity is not None else model.arity
    if arity != model.arity:
        raise usage(f"--arity {arity} does not match the model's arity {model.arity}")
    inputs = [args.model]
    validity = None
    if args.validity:
        inputs.append(args.validity)
        try:
            validity = ClauseValidity.load(args.validity, arity)
        except FileNotFoundError:
            raise data_error(f"missing file: {args.validity}") from None
        except (ValueError, KeyError, TypeError) as exc:
            raise data_error(f"bad validity file: {exc}") from None
    try:
        params = DeParams(args.population, args.generations, args.cr, args.f, args.seed)
    except ValueError as exc:
        raise usage(str(exc)) from None
    result = de_optimize(model, arity, validity, params)
    body = header("optimize", args.seed, inputs)
    body["de"] = vars(params)
    body["result"] = result.to_dict()
    if names:
        body["result"]["enabled_features"] = [n for n, b in zip(names, result.best_config) if b]
    return dump_json(body)


def _read_samples(path):
    try:
        raw = Path(path).read_bytes()
    except (FileNotFoundError, IsADirectoryError):
        raise data_error(f"missing file: {path}") from None
    text = raw.decode("utf-8", errors="replace").strip()
    if not text:
        raise data_error(f"empty file: {path}")
    try:
        if text.startswith("["):
            vals = [float(v) for v in json.loads(text)]
        else:
            vals = [float(t) for t in text.replace(",", " ").split()]
    except (ValueError, TypeError):
        raise data_error(f"malformed numbers in {path}") from None
    if not vals:
        raise data_error(f"empty file: {path}")
    if not np.isfinite(vals).all():
        raise data_error(f"non-finite value in {path}")
    # digest the bytes we parsed; pipes cannot be read twice
    return vals, hashlib.sha256(raw).hexdigest()


def cmd_rank(args):
    groups, digests = {}, {}
    for path in args.files:
        name = Path(path).stem
        if name in groups:
            name = str(path)
        groups[name], digests[str(path)] = _read_samples(path)
    table = scott_knott(groups, seed=args.seed, iterations=args.iterations, confidence=args.confidence)
    if args.format == "text":
        return table.to_text()
    body = header("rank", args.seed, digests)
    body.update(table.to_dict())
    return dump_json(body)


def cmd_dim(args):
    ds = load_data(args.data, args.target)
    est = intrinsic_dimension(ds, args.r0, args.rmax, args.steps)
    if args.table:
        emit(est.table_csv(), args.table)
    if args.format == "csv":
        return est.table_csv()
    body = header("dim", None, [args.data])
    body["ambient_dimension"] = ds.n_features
    body["estimate"] = est.to_dict()
    return dump_json(body)


def cmd_synth(args):
    ds = additive_dataset(args.features, args.noise, args.seed, args.base)
    if args.out:
        ds.to_csv(args.out)
        return dump_json({"rows": len(ds), "features": ds.n_features, "out": str(args.out), "seed": args.seed})
    buf = io.StringIO()
    ds.to_csv(buf)
    return buf.getvalue()


# -- parser -------------------------------------------------------------------


def _add_data(p):
    p.add_argument("--data", required=True, help="measured table (CSV)")
    p.add_argument("--target", default=None, help="performance column (default: last column)")


def _add_policy(p, default="s1"):
    p.add_argument("--policy", choices=POLICIES, default=default)
    p.add_argument("--leaf-multiplier", type=float, default=1.0, help="leaf threshold = m * sqrt(N)")
    p.add_argument("--k", type=int, default=None, help="sample size for --policy random")
    p.add_argument("--rounds", type=int, default=2, help="steps of n_features for --policy progressive")


def _add_cart(p):
    p.add_argument("--min-samples-split", type=int, default=4)
    p.add_argument("--min-samples-leaf", type=int, default=1)
    p.add_argument("--max-depth", type=int, default=None)


def build_parser():
    ap = argparse.ArgumentParser(prog="confspace", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"confspace {__version__}")
    ap.set_defaults(own_out=False)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rig", help="repeated train-fraction experiment")
    _add_data(p)
    _add_policy(p)
    _add_cart(p)
    p.add_argument("--fractions", default=",".join(str(f) for f in DEFAULT_FRACTIONS))
    p.add_argument("--repeats", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--elbow-tolerance", type=float, default=1.0)
    p.add_argument("--format", choices=("json", "text", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rig)

    p = sub.add_parser("sample", help="select rows to measure")
    _add_data(p)
    _add_policy(p)
    p.add_argument("--fraction", type=float, default=None, help="sample from this train fraction only")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--tree", action="store_true", help="include the cluster tree")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("train", help="sample, measure and fit a regression tree")
    _add_data(p)
    _add_policy(p)
    _add_cart(p)
    p.add_argument("--fraction", type=float, default=None)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", help="write the model here")
    p.set_defaults(func=cmd_train, own_out=True)

    p = sub.add_parser("optimize", help="differential evolution against a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--arity", type=int, default=None)
    p.add_argument("--validity", help='JSON {"clauses": [{"bit": i, "value": 0|1}, ...]}')
    p.add_argument("--population", type=int, default=30)
    p.add_argument("--generations", type=int, default=50)
    p.add_argument("--cr", type=float, default=0.7)
    p.add_argument("--f", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("rank", help="Scott-Knott ranking of per-repeat error samples")
    p.add_argument("files", nargs="+", help="one file of numbers per method")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--confidence", type=float, default=0.95)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("dim", help="correlation dimension of the configurations")
    _add_data(p)
    p.add_argument("--r0", type=float, default=None)
    p.add_argument("--rmax", type=float, default=None)
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--table", help="write the (r, C(r)) table as CSV")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("synth", help="write a synthetic additive table")
    p.add_argument("--features", type=int, default=10)
    p.add_argument("--noise", type=float, default=0.01)
    p.add_argument("--base", type=float, default=100.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_synth, own_out=True)
    return ap


def _fail(code, kind, message):
    sys.stderr.write(json.dumps({"error": kind, "exit": code, "message": message}) + "\n")
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
        emit(text, None if args.own_out else getattr(args, "out", None))
    except CliError as exc:
        return _fail(exc.code, exc.kind, str(exc))
    except DatasetError as exc:
        return _fail(EXIT_DATA, "data", str(exc))
    except (SamplingError, OptimizationError, DimensionError, ValueError, ArithmeticError) as exc:
        return _fail(EXIT_RUNTIME, "runtime", str(exc))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
