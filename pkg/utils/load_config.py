import yaml


def parse_config(text: str) -> dict:
    """Parses YAML configuration text into a dictionary.

    Args:
        text (str): YAML text; an empty document gives an empty dictionary.

    Raises:
        yaml.YAMLError: malformed YAML, with the problem mark when available.
        TypeError: the document is not a mapping.

    Returns:
        dict: The configuration dictionary.
    """
    config = yaml.safe_load(text)
    if config is None:
        return {}
    if not isinstance(config, dict):
        raise TypeError(f"the configuration must be a mapping, got {type(config).__name__}")
    return config


def load_config(config_file_path: str) -> dict:
    """Loads the configuration file from the given path.

    Args:
        config_file_path (str): Path to the configuration file.

    Returns:
        dict: The configuration dictionary.
    """
    with open(config_file_path, "r", encoding="utf-8") as f:
        return parse_config(f.read())
