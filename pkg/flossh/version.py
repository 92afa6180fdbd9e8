# 786
# Flossh source: version.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


__version__ = "1.0"
