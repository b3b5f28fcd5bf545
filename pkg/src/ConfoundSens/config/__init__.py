from .config import CONFIG
from .config_loader import ConfoundSensConfigLoader
from ConfoundSens.core.errors import InvalidConfigException
