import os
from dotenv import load_dotenv

load_dotenv()


def _int_env(name, default):
    value = os.environ.get(name)
    return int(value) if value not in (None, '') else default


class Config:
    # Reports
    REPORT_DIR = os.environ.get('YANGIAN_REPORT_DIR', 'reports')
    DEFAULT_JOBS = _int_env('YANGIAN_JOBS', None)

    # Suite gates
    MAX_DRINFELD_N = 3
    MAX_BURNSIDE_N = 3

    # Inputs
    PATTERNS_FILE = os.environ.get(
        'YANGIAN_PATTERNS_FILE',
        os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data', 'principal_patterns.json'))
    DRINFELD_SAMPLES = _int_env('YANGIAN_DRINFELD_SAMPLES', 20)
    RANDOM_SEED = _int_env('YANGIAN_SEED', 20240917)

    # Logging
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO').upper()
    LOG_FILE = os.environ.get('YANGIAN_LOG_FILE', 'verify.log')
