
__version__ = "0.1.0"

from .seqcore import ExtendedSequence, GeometricTail, MultiTail, PowerTail, ZeroTail, finite
from .settings import Settings, default_settings
from .decision import Verdict, decide, explain
from .essentials import Outcome

__all__ = ["ExtendedSequence", "GeometricTail", "MultiTail", "PowerTail", "ZeroTail", "finite", "Settings",
           "default_settings", "Verdict", "decide", "explain", "Outcome"]
