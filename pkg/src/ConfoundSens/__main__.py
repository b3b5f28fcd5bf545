import logging
import sys
import typing
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from ConfoundSens.__cmd_args__ import parse_args


def build_run_config(args, config) -> typing.Any:
    """Command parameters from the arguments, missing values come from the configuration file"""
    from ConfoundSens import cli

    sampler = config.sampler
    common = {
        'out_dir': Path(args.out_dir) if args.out_dir is not None else config.directories.output,
        'seed': args.seed if args.seed is not None else sampler.seed,
        'workers': sampler.workers,
    }

    if args.command == 'simulate':
        return cli.SimulateRunConfig(n=args.n, k=args.k, m=args.m, r2=args.r2, dgp=args.dgp.upper(),
                                     variant=args.variant.upper(), **common)

    data = {'input': Path(args.input), 'outcome_col': args.outcome_col} if args.input is not None else {}
    numerics = {
        'tol': args.tol if getattr(args, 'tol', None) is not None else config.numerics.stat_tol,
        'pd_rel_tol': config.numerics.pd_rel_tol,
        'pinv_rcond': config.numerics.pinv_rcond,
    }
    if args.command == 'scree':
        return cli.ScreeRunConfig(standardize=args.standardize, **data, **common)

    if args.command == 'bounds':
        grid = args.r2 if args.r2 is not None else np.linspace(0, 1, 11).round(10).tolist()
        return cli.BoundsRunConfig(
            m=args.m, r2_grid=grid, standardize=args.standardize,
            contrasts=args.contrasts, nc_spec=args.nc_spec, **numerics, **data, **common
        )

    if args.command == 'sample':
        iters = args.iters if args.iters is not None else sampler.iters
        warmup = args.warmup if args.warmup is not None else int(iters * sampler.warmup_fraction)
        return cli.SampleRunConfig(
            m=args.m, regime=args.regime, iters=iters, warmup=warmup,
            chains=args.chains if args.chains is not None else sampler.chains,
            r2_upper=args.r2_upper if args.r2_upper is not None else sampler.r2_upper,
            nc_spec=args.nc_spec, standardize=args.standardize,
            nonnull_fraction=sampler.nonnull_fraction, slab_scale=sampler.slab_scale, **numerics, **data, **common
        )

    return cli.Prop1RunConfig(m_values=args.m_values, k=args.k, r2=args.r2, draws=args.draws,
                              contrasts=args.contrasts, **data, **common)


def main(passed_args=None) -> typing.Union[int, str]:

    args = parse_args(passed_args)

    import ConfoundSens
    from ConfoundSens import cli
    from ConfoundSens.core.errors import EXIT_CONFIG, EXIT_IO, ConfoundSensError
    from ConfoundSens.core.logger import SensError, log_lines

    log = logging.getLogger('ConfoundSens')

    try:
        ConfoundSens.config.ConfoundSensConfigLoader(args.config)
        cfg = build_run_config(args, ConfoundSens.CONFIG)
        files = getattr(cli, f'cmd_{args.command}')(cfg)
    except ValidationError as e:
        log_lines(log, logging.ERROR, str(e))
        return EXIT_CONFIG
    except (ConfoundSensError, OSError) as e:
        SensError(log).add(f'{e.__class__.__name__} in cmd_{args.command}:').add_exception(e).dump()
        return e.exit_code if isinstance(e, ConfoundSensError) else EXIT_IO
    except Exception as e:
        # unexpected, so it goes to the console, too
        ConfoundSens.core.wrapper.process_exception(f'cmd_{args.command}', e, do_print=True, logger=log)
        return str(e)

    for file in files:
        log.info(f'Wrote {file}')
    return 0


if __name__ == "__main__":
    sys.exit(main())
