__version__ = '1.0'

# registers the reference surfaces
import transurf.fixtures  # noqa: E402,F401
