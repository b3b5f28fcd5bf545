import logging
from pathlib import Path

import voluptuous
from EasyCo import ConfigContainer, ConfigEntry, ConfigFile, PathContainer

from .platform_defaults import get_out_dir

log = logging.getLogger('ConfoundSens.Config')

_POSITIVE = voluptuous.All(voluptuous.Any(float, int), voluptuous.Range(min=0, min_included=False))
_FRACTION = voluptuous.All(voluptuous.Any(float, int),
                          voluptuous.Range(min=0, max=1, min_included=False, max_included=False))
_UNIT = voluptuous.All(voluptuous.Any(float, int), voluptuous.Range(min=0, max=1))


class Directories(PathContainer):
    logging: Path = ConfigEntry(Path('log'), description='Folder where the logs will be written to')
    output: Path = ConfigEntry(get_out_dir(Path('output')), description='Default folder for result files')

    def on_all_values_set(self):
        try:
            # create folder structure if it does not exist
            if not self.logging.is_dir():
                self.logging.mkdir(parents=True)
        except Exception as e:
            log.error(e)
            print(e)


class Numerics(ConfigContainer):
    pd_rel_tol: float = ConfigEntry(
        1e-10, validator=_FRACTION, description='Smallest eigenvalue relative to the largest for a PD matrix')
    pinv_rcond: float = ConfigEntry(
        1e-10, validator=_FRACTION, description='Relative cutoff of singular values for the pseudoinverse')
    stat_tol: float = ConfigEntry(
        0.05, validator=_POSITIVE,
        description='Relative negative control compatibility tolerance (bounds and sample --tol)')


class Sampler(ConfigContainer):
    iters: int = ConfigEntry(2000, validator=voluptuous.All(int, voluptuous.Range(min=2)),
                             description='Iterations per chain (including warmup)')
    chains: int = ConfigEntry(4, validator=voluptuous.All(int, voluptuous.Range(min=1)),
                              description='Number of independent chains')
    warmup_fraction: float = ConfigEntry(0.5, validator=voluptuous.All(voluptuous.Any(float, int),
                                                                        voluptuous.Range(min=0, max=1, max_included=False)),
                                         description='Fraction of the iterations discarded as warmup')
    seed: int = ConfigEntry(0, validator=voluptuous.All(int, voluptuous.Range(min=0)), description='Default seed')
    workers: int = ConfigEntry(4, validator=voluptuous.All(int, voluptuous.Range(min=1)),
                               description='Worker threads for chains and contrast grids')
    r2_upper: float = ConfigEntry(1.0, validator=_UNIT, description='Upper bound of the uniform R² prior')
    nonnull_fraction: float = ConfigEntry(
        0.1, validator=voluptuous.All(voluptuous.Any(float, int), voluptuous.Range(min=0, max=1, min_included=False,
                                                                                    max_included=False)),
        description='Expected fraction of non-zero effects (horseshoe global scale)')
    slab_scale: float = ConfigEntry(2.0, validator=_POSITIVE, description='Slab scale of the regularized horseshoe')


class ConfoundSensConfig(ConfigFile):
    directories = Directories()
    numerics = Numerics()
    sampler = Sampler()


CONFIG: ConfoundSensConfig = ConfoundSensConfig()
