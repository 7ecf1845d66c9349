
__version__ = "0.3.0"
__build__ = "19102026"
__author__ = "pacraft developers"
__copyright__ = "pacraft developers"
__license__ = "GPL3"
__maintainer__ = "pacraft developers"
__email__ = "pacraft@users.noreply.github.com"
