"""Init."""
from src.__about__ import __version__

__author__ = "wlp-gamma maintainers"
