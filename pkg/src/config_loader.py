import copy
import os
import yaml
from typing import Dict, Any, Optional
import logging

from src.errors import InputError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG: Dict[str, Any] = {
    'engine': {'depth': 4, 'node_budget': 100000},
    'window': {'length': 4},
    'sampling': {'seed': 7, 'samples': 100},
    'logging': {'level': 'WARNING', 'file': 'pathnet.log'},
}

REQUIRED_SECTIONS = ['engine', 'window', 'sampling', 'logging']


def load_config(config_path: str) -> Dict[str, Any]:
    if not os.path.exists(config_path):
        raise FileNotFoundError(f"Configuration file not found: {config_path}")
    try:
        with open(config_path, 'r') as f:
            config = yaml.safe_load(f) or {}

        logger.debug(f"Loaded configuration from {config_path}")
        return config

    except yaml.YAMLError as e:
        logger.error(f"Error parsing configuration file: {str(e)}")
        raise


def expand_env_vars(config: Dict[str, Any]) -> Dict[str, Any]:
    """
    expand environment variables in configuration values
    """
    expanded = {}

    for key, value in config.items():
        if isinstance(value, str) and value.startswith('$'):
            env_name = value[1:]
            env_value = os.getenv(env_name)
            if env_value:
                expanded[key] = env_value
                logger.debug(f"Expanded {key} from environment variable {env_name}")
            else:
                logger.warning(f"Environment variable {env_name} not found for key {key}")
                expanded[key] = value
        elif isinstance(value, dict):
            expanded[key] = expand_env_vars(value)
        else:
            expanded[key] = value

    return expanded


def merge_defaults(config: Dict[str, Any], defaults: Dict[str, Any] = DEFAULT_CONFIG) -> Dict[str, Any]:
    """Fill every key missing from `config` with its default; nested sections merge key by key."""
    merged = copy.deepcopy(defaults)
    for key, value in config.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_defaults(value, merged[key])
        else:
            merged[key] = value
    return merged


def validate_config(config: Dict[str, Any], required_fields: list) -> bool:
    missing_fields = []

    for field in required_fields:
        if field not in config or not config[field]:
            missing_fields.append(field)

    if missing_fields:
        logger.error(f"Missing required configuration fields: {', '.join(missing_fields)}")
        return False

    return True


def _as_int(config: Dict[str, Any], section: str, key: str, minimum: int) -> int:
    value = config[section][key]
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise InputError(f"{section}.{key} must be an integer, got {value!r}")
    if number < minimum:
        raise InputError(f"{section}.{key} must be at least {minimum}, got {number}")
    return number


def load_settings(config_path: Optional[str] = None) -> Dict[str, Any]:
    """Configuration with defaults applied; a missing file means all defaults."""
    raw: Dict[str, Any] = {}
    if config_path and os.path.exists(config_path):
        try:
            raw = load_config(config_path)
        except yaml.YAMLError as e:
            raise InputError(f"Configuration file {config_path} is not valid YAML: {e}") from e
        if not isinstance(raw, dict):
            raise InputError(f"Configuration file {config_path} must hold a mapping")
        raw = expand_env_vars(raw)
    elif config_path:
        logger.warning(f"Configuration file not found: {config_path}; using defaults")

    config = merge_defaults(raw)
    if not validate_config(config, REQUIRED_SECTIONS):
        raise InputError(f"Configuration is missing sections: {REQUIRED_SECTIONS}")

    config['engine']['depth'] = _as_int(config, 'engine', 'depth', 0)
    config['engine']['node_budget'] = _as_int(config, 'engine', 'node_budget', 1)
    config['window']['length'] = _as_int(config, 'window', 'length', 0)
    config['sampling']['seed'] = _as_int(config, 'sampling', 'seed', 0)
    config['sampling']['samples'] = _as_int(config, 'sampling', 'samples', 1)
    return config
