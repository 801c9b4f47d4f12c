"""Complete eigenstructure, orbit geometry and closure obstructions for
complex symmetric matrix pencils of bounded rank."""

from .canonical import *  # noqa: F401,F403
from .experiments import *  # noqa: F401,F403
from .extract import *  # noqa: F401,F403
from .geometry import *  # noqa: F401,F403
from .order import *  # noqa: F401,F403
from .partitions import *  # noqa: F401,F403
from .pencil import *  # noqa: F401,F403
from .rank import *  # noqa: F401,F403
from .serialization import *  # noqa: F401,F403

__version__ = "0.1.0"
