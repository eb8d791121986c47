# Copyright 2026 the sibf authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reference-guided multichannel target source extraction.

The heavy lifting lives in the `_sibf` extension module; this package
re-exports its surface.
"""

from sibf._sibf import (
    ArgumentError,
    DimensionError,
    IoError,
    SingularityError,
    __version__,
    cast,
    extract,
    generate_scene,
    istft,
    max_snr,
    normalize_reference,
    si_sdr,
    snr,
    stft,
    zero_band_edges,
)

__all__ = [
    "ArgumentError",
    "DimensionError",
    "IoError",
    "SingularityError",
    "__version__",
    "cast",
    "extract",
    "generate_scene",
    "istft",
    "max_snr",
    "normalize_reference",
    "si_sdr",
    "snr",
    "stft",
    "zero_band_edges",
]
