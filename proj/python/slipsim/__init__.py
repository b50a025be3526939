"""Spring-mass running stance model.

Simulation of the inverted-elastic-pendulum stance phase, the stance
stiffness boundary value problem (shooting + secant), closed-form
large-stiffness approximations, and convergence-order studies.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
