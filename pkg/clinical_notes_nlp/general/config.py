#!/usr/bin/env python3
"""
This module handles the run configuration.  Every subcommand is fully determined
by a `RunConfig`, which is assembled from (in order of precedence) the CLI
flags, an optional JSON config file, and the built-in defaults held by the
`RunConfig` fields themselves.

The JSON config file is a flat object keyed by `RunConfig` field names.  It may
also hold one object per subcommand (e.g. `"grid": {"k": 10}`), whose keys
override the flat ones when that subcommand runs.

Module Attributes:
  SUBCOMMAND_NAMES ((str)): Subcommands a config file may hold a section for.
  logger (Logger): Logger for this module.
  _CASTS ({str: CastType}): Cast type of every scalar `RunConfig` field that
    may arrive as a string from a config file.
  _BOOL_FIELDS ({str}): Names of boolean `RunConfig` fields.
"""
import dataclasses
from enum import Enum
import json
import logging
import os.path

from clinical_notes_nlp.general import dirs
from clinical_notes_nlp.general.exceptions import *  # pylint: disable=wildcard-import



SUBCOMMAND_NAMES = ('synth', 'preprocess', 'split', 'top-terms', 'fit',
        'predict', 'grid')

logger = logging.getLogger(__name__)



class UnsupportedFormatError(InvalidConfigError):
    """
    Raised when parsing any argument and it is in an invalid format (and is not
    covered by a more specific or more appropriate error).
    """



def resolve_conf_path(conf_path):
    """
    Resolves a config file path.  Paths that exist as given (absolute, or
    relative to the working directory) are used directly; otherwise the path is
    tried relative to the repo config dir.

    Args:
      conf_path (str): The path provided by the user.

    Returns:
      (str): The path to open.  May not exist if neither location has it, in
        which case opening it raises the usual `FileNotFoundError`.
    """
    if os.path.exists(conf_path):
        return conf_path
    return os.path.join(dirs.get_conf_path(), conf_path)



def read_conf_file(conf_rel_file, conf_base_dir=None):
    """
    Read a JSON config file.

    Args:
      conf_rel_file (str): Relative file path to config file.  An absolute path
        ignores `conf_base_dir`.
      conf_base_dir (str): Base file path to use with relative path.  If not
        provided, this will use the repo config dir.

    Returns:
      ({str: *}): The parsed config object.

    Raises:
      (UnsupportedFormatError): The file is not a JSON object.
      (OSError): The file could not be read.
    """
    if conf_base_dir is None:
        conf_base_dir = dirs.get_conf_path()
    conf_file = os.path.join(conf_base_dir, conf_rel_file)

    with open(conf_file, encoding='utf_8') as file:
        try:
            conf = json.load(file)
        except (json.JSONDecodeError, UnicodeDecodeError) as ex:
            raise UnsupportedFormatError(f'Config file "{conf_file}" is not'
                    + f' valid JSON: {ex}') from ex

    if not isinstance(conf, dict):
        raise UnsupportedFormatError(f'Config file "{conf_file}" must hold a'
                + ' JSON object at the top level.')
    return conf



class CastType(Enum):
    """
    Enum of cast types.

    These are used to specify a target type when casting in `cast_var()`.
    """
    INT = 'int'
    FLOAT = 'float'
    STRING = 'string'



def cast_var(var, cast_type, fallback_to_original=False):
    """
    Cast variable to the specified type.

    Args:
      var (*): Variable of an unknown type.
      cast_type (CastType): Type that var should be cast to, if possible.
      fallback_to_original (bool): If true, will return original var if cast
        fails; otherwise, failed cast will raise exception.

    Returns:
      var (CastType, or ?): Same as var provided, but of the type specified by
        CastType; but if cast failed and fallback to original was true, will
        return original var in original type.

    Raises:
      (TypeError): Cannot cast because type specified is not supported, or
        a bool was given for a number.
      (ValueError): Cast failed (including a non-integral float for INT) and
        fallback to original was not True.
    """
    try:
        if cast_type in (CastType.INT, CastType.FLOAT) \
                and isinstance(var, bool):
            raise TypeError('Cast failed -- bool is not a number.')
        if cast_type == CastType.INT:
            if isinstance(var, float) and not var.is_integer():
                raise ValueError(f'Cast failed -- {var} is not integral.')
            return int(var)
        if cast_type == CastType.FLOAT:
            return float(var)
        if cast_type == CastType.STRING:
            return str(var)
        raise TypeError('Cast failed -- unsupported type.')

    except (TypeError, ValueError):
        if fallback_to_original:
            return var
        raise



def parse_list_from_conf_string(conf_str, val_type, delim=','):
    """
    Parse a string into a list of items, such as the MLP hidden layer sizes
    `"100, 50"`.

    Args:
      conf_str (str): The string to be split.
      val_type (CastType): The type to cast each element to.
      delim (str): The delimiter on which to split conf_str.

    Returns:
      list_out (list of val_type): All non-empty elements found in conf_str,
        each cast to val_type.

    Raises:
      (ValueError): An element could not be cast.
    """
    if not conf_str:
        return []
    list_out = []
    for val in conf_str.split(delim):
        val = val.strip()
        if val:
            list_out.append(cast_var(val, val_type))
    return list_out



def _parse_bool(val):
    """
    Parse a config boolean, accepting JSON booleans and the usual strings.

    Args:
      val (bool/str/int): The value from the config file.

    Returns:
      (bool): The parsed boolean.

    Raises:
      (ValueError): Not a recognizable boolean.
    """
    if isinstance(val, bool):
        return val
    if str(val).strip().lower() in ('1', 'true', 'yes', 'on'):
        return True
    if str(val).strip().lower() in ('0', 'false', 'no', 'off'):
        return False
    raise ValueError(f'Not a boolean: {val!r}')



@dataclasses.dataclass(frozen=True)
class RunConfig:                           # pylint: disable=too-many-instance-attributes
    """
    Everything a subcommand needs.  No hidden state: two runs with equal
    `RunConfig`s produce identical outputs.

    Instance Attributes:
      See field list.  Paths are `None` when the subcommand does not use them.
    """
    subcommand: str = None
    input_path: str = None
    input_format: str = None
    out_path: str = None
    table_out_path: str = None
    artifact_path: str = None
    train_out_path: str = None
    test_out_path: str = None

    representation: str = 'tfidf'
    model: str = 'mlp'
    select_k: int = None
    seed: int = 1

    fold_accents: bool = True
    drop_numeric: bool = True
    stopwords_path: str = None
    min_df: int = 1
    first_stay_only: bool = True
    filter_note_types: bool = True

    k: int = 5
    stratified: bool = True
    jobs: int = 1
    reference: bool = False
    test_fraction: float = 0.2
    threshold: float = 0.5
    top_n: int = 20

    n_docs: int = 600
    signal_strength: float = 0.7
    positive_fraction: float = 0.5
    vocab_size: int = 300
    n_patients: int = 300
    n_providers: int = 60
    doc_len_min: int = 20
    doc_len_max: int = 60

    embed_dim: int = 100
    window: int = 5
    embed_epochs: int = 5
    embed_lr: float = 0.025
    negative: int = 5

    lr_l2: float = 1e-4
    lr_step: float = 0.01
    lr_epochs: int = 500

    var_smoothing: float = 1e-9

    mlp_hidden: tuple = (100,)
    mlp_lr: float = 0.05
    mlp_epochs: int = 200
    mlp_batch_size: int = 32



    def validate(self):
        """
        Check the ranges of the values every subcommand relies on.

        Raises:
          (KTooSmallError): `select_k` < 1 or `k` < 2.
          (InvalidConfigError): Any other value out of range.
        """
        if self.select_k is not None and self.select_k < 1:
            raise KTooSmallError(f'--select-k must be >= 1, got {self.select_k}')
        if self.k < 2:
            raise KTooSmallError(f'--k must be >= 2, got {self.k}')
        if not 0 < self.test_fraction < 1:
            raise InvalidConfigError('--test-fraction must be in (0, 1), got'
                    + f' {self.test_fraction}')
        if self.jobs < 1:
            raise InvalidConfigError(f'--jobs must be >= 1, got {self.jobs}')
        if self.min_df < 1:
            raise InvalidConfigError(f'--min-df must be >= 1, got {self.min_df}')
        if self.negative < 0:
            raise InvalidConfigError('--neg must be >= 0, got'
                    + f' {self.negative}')



    def representation_params(self, name):
        """
        Gets the constructor kwargs for the representation `name`.

        Args:
          name (str): One of `bow`, `tfidf`, `embed`.

        Returns:
          ({str: *}): The kwargs.
        """
        if name == 'embed':
            return {
                'min_df': self.min_df,
                'dim': self.embed_dim,
                'window': self.window,
                'epochs': self.embed_epochs,
                'lr': self.embed_lr,
                'negative': self.negative,
            }
        return {'min_df': self.min_df}



    def model_params(self, name):
        """
        Gets the constructor kwargs for the classifier `name`.

        Args:
          name (str): One of `lr`, `gnb`, `mlp`.

        Returns:
          ({str: *}): The kwargs.
        """
        if name == 'lr':
            return {'l2': self.lr_l2, 'lr': self.lr_step,
                    'epochs': self.lr_epochs}
        if name == 'gnb':
            return {'var_smoothing': self.var_smoothing}
        return {
            'hidden': tuple(self.mlp_hidden),
            'lr': self.mlp_lr,
            'epochs': self.mlp_epochs,
            'batch_size': self.mlp_batch_size,
        }



_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}

_BOOL_FIELDS = {'fold_accents', 'drop_numeric', 'stratified', 'reference',
        'first_stay_only', 'filter_note_types'}

_CASTS = {
    name: CastType.INT if isinstance(f.default, int)
            else CastType.FLOAT if isinstance(f.default, float)
            else CastType.STRING
    for name, f in _FIELDS.items()
    if name not in _BOOL_FIELDS and name != 'mlp_hidden'
}
_CASTS['select_k'] = CastType.INT



def _coerce(name, val):
    """
    Coerce a config-file value to the type of its `RunConfig` field.

    Args:
      name (str): The field name.
      val (*): The value as found in the config file.

    Returns:
      (*): The coerced value.

    Raises:
      (InvalidConfigError): The value cannot be coerced.
    """
    if val is None:
        return None
    try:
        if name in _BOOL_FIELDS:
            return _parse_bool(val)
        if name == 'mlp_hidden':
            if isinstance(val, str):
                return tuple(parse_list_from_conf_string(val, CastType.INT))
            return tuple(cast_var(v, CastType.INT) for v in val)
        return cast_var(val, _CASTS[name])
    except (TypeError, ValueError) as ex:
        raise InvalidConfigError(f'Config value for "{name}" is invalid:'
                + f' {val!r}') from ex



def build_run_config(subcommand, cli_values, conf=None):
    """
    Assemble the `RunConfig` for a subcommand.  CLI flags win over the config
    file, which wins over the built-in defaults.

    Args:
      subcommand (str): The subcommand being run.
      cli_values ({str: *}): Values parsed from the CLI, keyed by field name.
        `None` means the flag was not given.
      conf ({str: *} or None): The parsed JSON config file, if any.

    Returns:
      (RunConfig): The assembled and validated run config.

    Raises:
      (InvalidConfigError): A config value cannot be coerced, or the file has
        a section for an unknown subcommand.
      (KTooSmallError): See `RunConfig.validate()`.
    """
    merged = {}
    conf = conf or {}
    section = conf.get(subcommand, {})
    if not isinstance(section, dict):
        raise InvalidConfigError(f'Config section "{subcommand}" must be an'
                + ' object.')

    unknown_sections = sorted(k for k, v in conf.items()
            if isinstance(v, dict) and k not in SUBCOMMAND_NAMES)
    if unknown_sections:
        raise InvalidConfigError('Unknown config sections:'
                + f' {", ".join(unknown_sections)}; expected one of'
                + f' {", ".join(SUBCOMMAND_NAMES)}')

    flat = {k: v for k, v in conf.items() if not isinstance(v, dict)}
    for source in (flat, section):
        unknown = [k for k in source if k not in _FIELDS or k == 'subcommand']
        if unknown:
            logger.warning('Discarded unknown config keys: '
                    + f'{", ".join(sorted(unknown))}')
        for key, val in source.items():
            if key in _FIELDS and key != 'subcommand':
                merged[key] = _coerce(key, val)

    for key, val in cli_values.items():
        if key in _FIELDS and val is not None:
            merged[key] = val

    run_config = RunConfig(subcommand=subcommand, **merged)
    run_config.validate()
    return run_config



class LevelFilter(logging.Filter):      # pylint: disable=too-few-public-methods
    """
    A logging filter for the level to set min and max log levels for a handler.
    While the min level is redundant given logging already implements this with
    the base level functionality, the max level adds a new control.

    Class Attributes:
      N/A

    Instance Attributes:
      _min_exc_levelno (int or None): The min log level above which is to be
        included (exclusive).  Can be None to skip min level check.
      _max_inc_levelno (int or None): The max log level below which is to be
        included (inclusive).  Can be None to skip max level check.
    """
    def __init__(self, min_exc_level=None, max_inc_level=None):
        """
        Creates the level filter.

        Args:
          min_exc_level (int/str/None): The min log level above which is to be
            included (exclusive).  Level number or level name; None disables.
          max_inc_level (int/str/None): The max log level below which is to be
            included (inclusive).  Level number or level name; None disables.
        """
        self._min_exc_levelno = self._to_levelno(min_exc_level)
        self._max_inc_levelno = self._to_levelno(max_inc_level)
        super().__init__()



    @staticmethod
    def _to_levelno(level):
        """
        Convert a level number or name to the level number.

        Args:
          level (int/str/None): The level.

        Returns:
          (int or None): The level number; None if `level` is None.
        """
        if level is None:
            return None
        try:
            return int(level)
        except ValueError:
            # Level name dict is bi-directional lookup -- See python source
            return logging.getLevelName(level.upper())



    def filter(self, record):
        """
        Filters the provided record according to the logic in this method.

        Args:
          record (LogRecord): The log record that is being checked whether to
            log.

        Returns:
          (bool): True if should log; False to drop.
        """
        if self._min_exc_levelno is not None \
                and record.levelno <= self._min_exc_levelno:
            return False
        if self._max_inc_levelno is not None \
                and record.levelno > self._max_inc_levelno:
            return False
        return True
