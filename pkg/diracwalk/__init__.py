__version__ = "0.1.0"
__title__ = "diracwalk"
__author__ = "lloydtao"
__license__ = "MIT"
