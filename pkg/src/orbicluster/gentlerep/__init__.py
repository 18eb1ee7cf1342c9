"""Representations of the gentle algebras attached to triangulations."""

from .modules import *  # noqa: F401,F403
from .modules import __all__ as _modules_all
from .reflection import reflect, perp_sk
from .strings import *  # noqa: F401,F403
from .strings import __all__ as _strings_all

__all__ = list(_modules_all) + list(_strings_all) + ["reflect", "perp_sk"]
