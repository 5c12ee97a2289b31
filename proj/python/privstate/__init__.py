# This code is part of privstate.
#
# (C) Copyright privstate contributors 2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
#
# Any modifications or derivative works of this code must retain this
# copyright notice, and modified files need to carry a notice indicating
# that they have been altered from the originals.

"""Private-state numerics: state families, twisting, the postselected
recombination protocol, and entanglement measures, backed by the C++ core."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__version__ = "0.1.0"
__doc__ = _core_doc or __doc__
