"""Maximum likelihood estimation for lambda-exponential families."""

try:
    from ._lexpfam import *  # noqa: F401,F403
    from ._lexpfam import __version__  # noqa: F401
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _lexpfam import *  # noqa: F401,F403
    from _lexpfam import __version__  # noqa: F401
