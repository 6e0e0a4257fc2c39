import os
from dotenv import load_dotenv

basedir = os.path.abspath(os.path.dirname(__file__))
load_dotenv(os.path.join(basedir, '.env'))


class Config:
    # Absolute tolerance on distances when certifying equilateral sets
    TOLERANCE = float(os.environ.get('EQUILATERAL_TOLERANCE') or 1e-10)

    # Seed for every randomised search (multistart, restarts, oracle spot-checks)
    SEED = int(os.environ.get('EQUILATERAL_SEED') or 0)

    # Number of random starts used by the equidistant-point and sphere searches
    SEARCH_STARTS = int(os.environ.get('EQUILATERAL_SEARCH_STARTS') or 100)

    # Iteration budget of the damped fixed-point iteration
    FIXED_POINT_BUDGET = int(os.environ.get('EQUILATERAL_FIXED_POINT_BUDGET') or 100000)

    LOG_LEVEL = os.environ.get('EQUILATERAL_LOG_LEVEL') or 'WARNING'

    # Optional log file; console (stderr) logging is always on
    LOG_FILE = os.environ.get('EQUILATERAL_LOG_FILE')
