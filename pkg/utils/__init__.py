from utils.load_config import load_config, parse_config
