"""Sand-dust image enhancement: chroma cast removal, DCP dehazing, CLAHE."""
from ._accel import BACKEND
from .colorcast import YuvPlanes, correct_cast, correct_chroma, rgb_to_yuv, yuv_to_rgb
from .contrast import ClaheParams, clahe, enhance_contrast
from .dehaze import (
    AtmosphericLight,
    DehazeParams,
    dark_channel,
    dehaze,
    estimate_atmospheric_light,
    estimate_transmission,
    guided_filter,
    recover_radiance,
)
from .imagecore import Raster8, box_mean, to_planes, to_raster
from .iqa import EdgeMap, QualityReport, UndefinedMetricError, assess, rate_e, rate_rbar, rate_sigma, visible_edges
from .pipeline import DegradationParams, PipelineConfig, enhance, run_batch, synth_degrade
from .ppm import read_ppm, write_ppm

__version__ = "0.1.0"
