# 786
# Flossh source: __init__.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.
