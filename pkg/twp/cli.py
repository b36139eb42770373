"""Command-line front end of the laboratory.

Every subcommand writes one JSON (or CSV) artifact, to :obj:`--out` when
given and to the standard output otherwise. The exit status is 0 on success,
1 when an exact inequality fails or an empirical quantity exceeds its
configured ceiling, and 2 on usage, parse and IO errors.
"""
import json
import sys
from argparse import ArgumentParser
from dataclasses import dataclass, fields
from typing import List, Optional

import yaml
from omegaconf import DictConfig, OmegaConf
from omegaconf.errors import OmegaConfBaseException

import twp
from twp import logger
from twp.config import DEFAULTS
from twp.datasets import generate
from twp.dyadic import DyadicMaximal, whitney
from twp.errors import InstanceFormatError, InvariantViolation
from twp.kernel import poisson_terms
from twp.model import KernelParams, doubling_ratios
from twp.operators import operator_norm
from twp.proofscope import run_proofscope
from twp.testing import summarize_sweep, sweep, verify, write_sweep_csv
from twp.utils import io
from twp.utils.parser_utils import parse_piece, parse_point, positive_float

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    """Settings of one run: model parameters, seed, tolerances and output
    path. Defaults come from :obj:`twp.config`."""
    m: int = 4
    n: int = 3
    S: float = 8.
    L: int = 6
    seed: int = 0
    instances: int = 1
    atoms: int = 32
    samples: int = 10_000
    delta: float = DEFAULTS['delta']
    tol_norm: float = DEFAULTS['tol_norm']
    max_iters: int = DEFAULTS['max_iters']
    eps_num: float = DEFAULTS['eps_num']
    carleson_constant: float = DEFAULTS['carleson_constant']
    principal_factor: float = DEFAULTS['principal_factor']
    ratio_ceiling: float = DEFAULTS['ratio_ceiling']
    hat_convention: str = DEFAULTS['hat_convention']
    mirror_rule: str = DEFAULTS['mirror_rule']
    workers: int = DEFAULTS['workers']
    dense_limit: int = DEFAULTS['dense_limit']
    out: Optional[str] = None


_FIELDS = [f.name for f in fields(RunConfig)]
_POSITIVE = ['delta', 'tol_norm', 'max_iters', 'eps_num',
             'carleson_constant', 'principal_factor', 'ratio_ceiling',
             'instances', 'atoms', 'samples', 'workers']


def build_config(args, overrides: Optional[dict] = None) -> DictConfig:
    """Merge, in order, the package configuration (environment included),
    the :obj:`--config` file, the :obj:`--params` file and the flags."""
    base = {k: twp.config[k] for k in _FIELDS if k in twp.config}
    cfg = OmegaConf.merge(OmegaConf.structured(RunConfig), base)
    if getattr(args, 'config', None):
        cfg = OmegaConf.merge(cfg, OmegaConf.load(args.config))
    if getattr(args, 'params', None):
        cfg = OmegaConf.merge(cfg, io.load_params(args.params).to_dict())
    flags = {
        k: v
        for k, v in vars(args).items() if k in _FIELDS and v is not None
    }
    cfg = OmegaConf.merge(cfg, flags, overrides or {})
    for key in _POSITIVE:
        if not cfg[key] > 0:
            raise ValueError(f"'{key}' must be positive, got {cfg[key]}.")
    if not cfg.delta <= 1:
        raise ValueError(f"'delta' must be in (0, 1], got {cfg.delta}.")
    return cfg


def _apply(cfg: DictConfig) -> KernelParams:
    twp.config.update({k: cfg[k] for k in DEFAULTS})
    return KernelParams(cfg.m, cfg.n, cfg.S, cfg.L)


def _emit(obj, out: Optional[str]):
    if out:
        io.save_json(obj, out)
    else:
        json.dump(obj, sys.stdout, indent=2, default=io._to_builtin)
        sys.stdout.write('\n')


def _instance(args, params: KernelParams):
    if not args.measures:
        raise ValueError("--measures is required.")
    return io.load_instance(args.measures, params)


###############################################################################
# Subcommands                                                                 #
###############################################################################


def cmd_kernel(args, cfg):
    params = _apply(cfg)
    case, mirrored, summands = poisson_terms(params, args.t, args.x, args.y,
                                             cfg.mirror_rule)
    _emit(
        dict(case=int(case),
             case_name=case.name,
             mirrored=mirrored,
             mirror_rule=cfg.mirror_rule,
             summands=[dict(name=k, value=v) for k, v in summands],
             total=sum(v for _, v in summands)), cfg.out)
    return EXIT_OK


def cmd_decompose(args, cfg):
    params = _apply(cfg)
    family = whitney(io.load_omega(args.omega, params))
    _emit(family.to_dict(), cfg.out)
    return EXIT_OK


def cmd_maximal(args, cfg):
    params = _apply(cfg)
    _, mu = _instance(args, params)
    psi = io.load_values(args.psi, len(mu), 'psi')
    maximal = DyadicMaximal(params, mu.tilde())
    _emit(dict(values=maximal.at_atoms(psi)), cfg.out)
    return EXIT_OK


def cmd_norm(args, cfg):
    params = _apply(cfg)
    sigma, mu = _instance(args, params)
    result = operator_norm(params, sigma, mu, tol=cfg.tol_norm,
                           max_iters=cfg.max_iters)
    _emit(result.to_dict(), cfg.out)
    return EXIT_OK


def cmd_verify(args, cfg):
    params = _apply(cfg)
    sigma, mu = _instance(args, params)
    report = verify(params, sigma, mu, convention=cfg.hat_convention,
                    mirror_rule=cfg.mirror_rule, eps=cfg.eps_num,
                    tol=cfg.tol_norm, max_iters=cfg.max_iters, strict=False,
                    metadata=dict(measures=args.measures))
    _emit(report.to_dict(), cfg.out)
    if not report.necessity_holds(cfg.eps_num):
        raise InvariantViolation(f"Necessity failed on {args.measures}.")
    if report.ratio > cfg.ratio_ceiling:
        logger.error(f"Sufficiency ratio {report.ratio:.4g} exceeds the "
                     f"ceiling {cfg.ratio_ceiling}.")
        return EXIT_FAILURE
    return EXIT_OK


def cmd_sweep(args, cfg):
    params = _apply(cfg)
    frame = sweep(params, cfg.instances, cfg.seed, cfg.atoms,
                  workers=cfg.workers, convention=cfg.hat_convention,
                  progress=not args.no_progress)
    summary = summarize_sweep(frame, cfg.ratio_ceiling)
    if cfg.out:
        write_sweep_csv(frame, cfg.out)
        logger.info(f"Saved {cfg.out}, summary: {summary}")
    else:
        _emit(summary, None)
    if summary['necessity_violations']:
        raise InvariantViolation(f"Necessity failed on "
                                 f"{summary['necessity_violations']} "
                                 f"instance(s).")
    if summary['above_ceiling']:
        logger.error(f"{summary['above_ceiling']} instance(s) above the "
                     f"ratio ceiling {cfg.ratio_ceiling}.")
        return EXIT_FAILURE
    return EXIT_OK


def cmd_proofscope(args, cfg):
    params = _apply(cfg)
    sigma, mu = _instance(args, params)
    phi = io.load_values(args.phi, len(mu), 'phi') if args.phi else None
    report = run_proofscope(params, sigma, mu, args.piece, phi=phi,
                            split=args.split, delta=cfg.delta,
                            samples=cfg.samples, seed=cfg.seed)
    _emit(report, cfg.out)
    return EXIT_OK if report['passed'] else EXIT_FAILURE


def cmd_demo_nondoubling(args, cfg):
    params = _apply(cfg)
    _emit(dict(params=params.to_dict(), rows=doubling_ratios(params)),
          cfg.out)
    return EXIT_OK


def cmd_generate(args, cfg):
    params = _apply(cfg)
    n_mu = cfg.atoms if args.n_mu is None else args.n_mu
    sigma, mu, seed = generate(cfg.seed, cfg.atoms, n_mu, params)
    data = dict(params=params.to_dict(), seed=seed,
                sigma=sigma.to_records(), mu=mu.to_records())
    _emit(data, cfg.out)
    return EXIT_OK


###############################################################################
# Parser                                                                      #
###############################################################################


def _common() -> ArgumentParser:
    parser = ArgumentParser(add_help=False)
    group = parser.add_argument_group('model')
    group.add_argument('--m', type=int)
    group.add_argument('--n', type=int)
    group.add_argument('--S', type=float)
    group.add_argument('--L', type=int)
    group.add_argument('--params', type=str, help="JSON file of parameters.")
    group = parser.add_argument_group('run')
    group.add_argument('--config', type=str, help="YAML or JSON run config.")
    group.add_argument('--seed', type=int)
    group.add_argument('--tol', dest='tol_norm', type=positive_float)
    group.add_argument('--max-iters', type=int)
    group.add_argument('--eps', dest='eps_num', type=positive_float)
    group.add_argument('--delta', type=float)
    group.add_argument('--ratio-ceiling', type=positive_float)
    group.add_argument('--hat-convention',
                       choices=['hat-of-triple', 'triple-of-hat'])
    group.add_argument('--mirror-rule', choices=['by-end', 'average'])
    group.add_argument('--out', type=str)
    return parser


def get_parser() -> ArgumentParser:
    common = _common()
    parser = ArgumentParser(prog='twp',
                            description="Two-weight inequality of the "
                            "Poisson semigroup on a manifold with two ends.")
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {twp.__version__}')
    sub = parser.add_subparsers(dest='command', required=True)

    kernel = sub.add_parser('kernel', help="Evaluate the kernel.")
    kernel_sub = kernel.add_subparsers(dest='action', required=True)
    p = kernel_sub.add_parser('eval', parents=[common])
    p.add_argument('--t', type=positive_float, required=True)
    p.add_argument('--x', type=parse_point, required=True)
    p.add_argument('--y', type=parse_point, required=True)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser('decompose', parents=[common],
                       help="Whitney family of an open set.")
    p.add_argument('--omega', type=str, required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser('maximal', parents=[common],
                       help="Dyadic maximal function at the mu-atoms.")
    p.add_argument('--measures', type=str, required=True)
    p.add_argument('--psi', type=str, required=True)
    p.set_defaults(func=cmd_maximal)

    for name, func, text in [('norm', cmd_norm, "Two-weight norm."),
                             ('verify', cmd_verify,
                              "Norm and testing constants.")]:
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument('--measures', type=str, required=True)
        p.set_defaults(func=func)

    p = sub.add_parser('sweep', parents=[common],
                       help="Verify a batch of random instances.")
    p.add_argument('--instances', type=int)
    p.add_argument('--atoms', type=int)
    p.add_argument('--workers', type=int)
    p.add_argument('--no-progress', action='store_true')
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser('proofscope', parents=[common],
                       help="Checks of the stopping-time construction.")
    p.add_argument('--measures', type=str, required=True)
    p.add_argument('--piece', type=parse_piece, default=(1, 1))
    p.add_argument('--split', type=int, choices=[1, 2, 3])
    p.add_argument('--phi', type=str)
    p.add_argument('--samples', type=int)
    p.set_defaults(func=cmd_proofscope)

    p = sub.add_parser('demo-nondoubling', parents=[common],
                       help="Volume ratios witnessing non-doubling.")
    p.set_defaults(func=cmd_demo_nondoubling)

    p = sub.add_parser('generate', parents=[common],
                       help="Write a random instance.")
    p.add_argument('--atoms', type=int)
    p.add_argument('--n-mu', type=int)
    p.set_defaults(func=cmd_generate)
    return parser


def run(args) -> int:
    """Run a parsed command and map failures to exit codes."""
    try:
        cfg = build_config(args)
        return args.func(args, cfg)
    except InvariantViolation as err:
        logger.error(f"Invariant violated: {err}")
        return EXIT_FAILURE
    except (InstanceFormatError, OSError, ValueError,
            OmegaConfBaseException, yaml.YAMLError) as err:
        logger.error(str(err))
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    twp.config.update_from_env()
    args = get_parser().parse_args(argv)
    return run(args)


if __name__ == '__main__':
    sys.exit(main())
