import copy
import json
import logging
import os
import warnings
from fractions import Fraction
from functools import lru_cache

from .util import get_precision_bounds, get_output_format

logger = logging.getLogger(__name__)

DEFAULT_SETTINGS_FILE = os.path.join(os.path.dirname(__file__), "settings.json")
MAX_PRECISION_LEVEL = 3


class Settings:

    def __init__(self, filename=None, precision_level=1, horizon=100000, tolerance="1/1000000000000",
                 interval_bits=128, exact_power_terms=512, debug_mode=False, epsilon_exponent=16, p_max=64,
                 truncation=200, exequal_blocks=8, one_neg_blocks=8, matrix_dtype="float64",
                 output_format="json", export_name="verdict", work_bound=None, knot_depth=None):
        if filename is not None:
            with open(filename) as json_file:
                data = json.load(json_file)
            self.export_dict = data
        else:
            self.export_dict = {
                "general": {
                    "precisionLevel": precision_level,
                    "horizon": horizon,
                    "tolerance": str(tolerance),
                    "intervalBits": interval_bits,
                    "exactPowerTerms": exact_power_terms,
                    "debugMode": debug_mode
                },
                "precision_levels": {
                    str(level): dict(zip(("workBound", "knotDepth"), get_precision_bounds(level)))
                    for level in range(1, MAX_PRECISION_LEVEL + 1)
                },
                "kernel": {
                    "epsilonExponent": epsilon_exponent,
                    "pMax": p_max
                },
                "construct": {
                    "truncation": truncation,
                    "exequalBlocks": exequal_blocks,
                    "oneNegBlocks": one_neg_blocks,
                    "matrixDtype": matrix_dtype
                },
                "export": {
                    "format": output_format,
                    "exportName": export_name
                }
            }
            # explicit bounds override the precision level table
            if work_bound is not None:
                self.export_dict["general"]["workBound"] = work_bound
            if knot_depth is not None:
                self.export_dict["general"]["knotDepth"] = knot_depth
        self.update_variables()

    def update(self, category, name, value):
        logger.info("updating entry in category %s, name %s: %s -> %s",
                    category, name, (self.export_dict[category]).get(name), value)
        (self.export_dict[category])[name] = value

    # update the settings variables according to the export_dict
    def update_variables(self):
        data = self.export_dict

        # general settings
        self.precision_level = int((data['general'])['precisionLevel'])
        if not 1 <= self.precision_level <= MAX_PRECISION_LEVEL:
            raise ValueError("precision level must be between 1 and %d, got %d"
                             % (MAX_PRECISION_LEVEL, self.precision_level))
        level = (data['precision_levels'])[str(self.precision_level)]
        self.work_bound = int((data['general']).get('workBound', level['workBound']))
        self.knot_depth = int((data['general']).get('knotDepth', level['knotDepth']))
        self.horizon = min(int((data['general'])['horizon']), self.work_bound)
        self.tolerance = Fraction((data['general'])['tolerance'])
        self.interval_bits = int((data['general'])['intervalBits'])
        self.exact_power_terms = int((data['general'])['exactPowerTerms'])
        self.debug = bool((data['general'])['debugMode'])

        # kernel test settings
        self.epsilon_exponent = int((data['kernel'])['epsilonExponent'])
        self.p_max = int((data['kernel'])['pMax'])

        # construction settings
        self.truncation = int((data['construct'])['truncation'])
        self.exequal_blocks = int((data['construct'])['exequalBlocks'])
        self.one_neg_blocks = int((data['construct'])['oneNegBlocks'])
        self.matrix_dtype = (data['construct'])['matrixDtype']

        # export settings
        self.output_format = get_output_format((data['export'])['format'])
        if self.output_format is None:
            raise ValueError("unknown output format %r" % (data['export'])['format'])
        self.export_name = (data['export'])['exportName']

    @property
    def epsilons(self):
        """The test family 1, 1/2, ..., 2**-epsilon_exponent used for the kernel necessity check."""
        return [Fraction(1, 2 ** k) for k in range(self.epsilon_exponent + 1)]

    def escalated(self):
        """Returns a copy at the next precision level, or None at the top level."""
        if self.precision_level >= MAX_PRECISION_LEVEL:
            warnings.warn("precision level %d is the highest available" % self.precision_level)
            return None
        result = copy.deepcopy(self)
        result.update("general", "precisionLevel", self.precision_level + 1)
        # level-driven bounds only, explicit overrides would pin the work bound
        (result.export_dict["general"]).pop("workBound", None)
        (result.export_dict["general"]).pop("knotDepth", None)
        result.update_variables()
        return result

    def save(self, filename):
        with open(filename, "w") as json_file:
            json.dump(self.export_dict, json_file, indent=4)


@lru_cache(maxsize=1)
def _packaged_defaults():
    return Settings(DEFAULT_SETTINGS_FILE)


def default_settings():
    """The packaged defaults. Returns a fresh copy, callers may update it."""
    return copy.deepcopy(_packaged_defaults())


def resolve_settings(settings=None):
    # library functions only read settings, so the cached defaults are shared
    if settings is None:
        return _packaged_defaults()
    if not isinstance(settings, Settings):
        raise TypeError("expected Settings, got %r" % (settings,))
    return settings
