"""``verify <suite>``: run a verification suite and emit a JSON or table report."""
import argparse
import configparser
import sys

from . import __version__
from .report import build_document, to_json, to_table
from .suites import DEFAULT_TOLERANCES, SUITES, SuiteConfig, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
MIN_NODES, MAX_NODES = 64, 8192


class UsageError(Exception):
    pass


def _parse_tol(item):
    name, sep, value = item.partition("=")
    if not sep:
        raise UsageError(f"--tol expects NAME=VALUE, got {item!r}")
    name = name.strip()
    if name not in DEFAULT_TOLERANCES:
        raise UsageError(f"unknown tolerance name {name!r}")
    try:
        v = float(value)
    except ValueError:
        raise UsageError(f"tolerance {name} is not a number: {value!r}") from None
    if not v > 0:
        raise UsageError(f"tolerance {name} must be positive")
    return name, v


def _check_nodes(n):
    if not (MIN_NODES <= n <= MAX_NODES) or n & (n - 1):
        raise UsageError(f"--nodes must be a power of two in [{MIN_NODES}, {MAX_NODES}], got {n}")
    return n


def load_config(path):
    """Read an INI file with a [verify] section and an optional [tolerances] section."""
    cp = configparser.ConfigParser()
    # keep tolerance names as written (they contain dots and are case sensitive)
    cp.optionxform = str
    try:
        with open(path) as fh:
            cp.read_file(fh)
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e}") from None
    except configparser.Error as e:
        raise UsageError(f"malformed config {path}: {e}") from None
    out = {"tolerances": {}}
    if cp.has_section("verify"):
        sec = cp["verify"]
        known = {"nodes", "max_order", "seed", "format", "out", "tol_scale"}
        for key in sec:
            if key not in known:
                raise UsageError(f"unknown key {key!r} in [verify]")
        try:
            for key in ("nodes", "max_order", "seed"):
                if key in sec:
                    out[key] = sec.getint(key)
            if "tol_scale" in sec:
                out["tol_scale"] = sec.getfloat("tol_scale")
        except ValueError as e:
            raise UsageError(f"bad value in [verify]: {e}") from None
        for key in ("format", "out"):
            if key in sec:
                out[key] = sec[key]
    if cp.has_section("tolerances"):
        for k, v in cp["tolerances"].items():
            name, val = _parse_tol(f"{k}={v}")
            out["tolerances"][name] = val
    return out


def build_parser():
    p = argparse.ArgumentParser(prog="verify", description="Run numerical verification suites.")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--config", metavar="PATH", help="INI file with [verify] and [tolerances] sections")
    p.add_argument("--nodes", type=int, help="starting contour node count (power of two, 64..8192)")
    p.add_argument("--max-order", type=int, dest="max_order", help="largest bracket order L")
    p.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                   help="override one check tolerance; repeatable")
    p.add_argument("--tol-scale", type=float, dest="tol_scale",
                   help="multiply every tolerance by this factor")
    p.add_argument("--format", choices=("json", "table"))
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--seed", type=int)
    return p


def resolve(args):
    """Merge defaults, config file and flags (flags win)."""
    settings = {"nodes": 256, "max_order": 12, "seed": SuiteConfig.seed, "format": "json",
                "out": None, "tol_scale": 1.0, "tolerances": {}}
    if args.config:
        file_cfg = load_config(args.config)
        settings["tolerances"].update(file_cfg.pop("tolerances"))
        settings.update(file_cfg)
    for key in ("nodes", "max_order", "seed", "format", "out", "tol_scale"):
        v = getattr(args, key)
        if v is not None:
            settings[key] = v
    for item in args.tol:
        name, v = _parse_tol(item)
        settings["tolerances"][name] = v
    _check_nodes(settings["nodes"])
    if not 0 <= settings["max_order"] <= 64:
        raise UsageError("--max-order must lie in [0, 64]")
    if not settings["tol_scale"] > 0:
        raise UsageError("--tol-scale must be positive")
    if settings["format"] not in ("json", "table"):
        raise UsageError(f"unknown format {settings['format']!r}")
    cfg = SuiteConfig(nodes=settings["nodes"], max_order=settings["max_order"], seed=settings["seed"],
                      tolerances=settings["tolerances"], tol_scale=settings["tol_scale"])
    return cfg, settings


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        cfg, settings = resolve(args)
    except UsageError as e:
        print(f"verify: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    reports = run_suite(args.suite, cfg)
    echo = dict(cfg.echo(), suite=args.suite)
    doc = build_document(reports, echo, __version__)
    text = to_json(doc) if settings["format"] == "json" else to_table(doc)
    if settings["out"]:
        try:
            with open(settings["out"], "w") as fh:
                fh.write(text)
        except OSError as e:
            print(f"verify: error: cannot write {settings['out']}: {e}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    s = doc["summary"]
    return EXIT_OK if s["pass"] == s["total"] else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
