#!/usr/bin/env python3
"""
The main entry point for the package.

Every subcommand is a thin wrapper: it assembles a `RunConfig`, loads its
inputs, calls into the library, and writes its outputs.  Exit codes are 0 on
success, 1 on a domain/validation error and 2 on an I/O or usage error.

Module Attributes:
  _NAME_MOD_OVERRIDE (str): Name to use as override for `__name__` in select
    cases since, in this module, `__name__` is often expected to be `__main__`.
  EXIT_OK (int): Exit code on success.
  EXIT_DOMAIN_ERROR (int): Exit code on a validation or domain error.
  EXIT_IO_ERROR (int): Exit code on an I/O or usage error.
  logger (Logger): Logger for this module.
"""
import argparse
import csv
import io
import json
import logging
import os
import signal
import sys

from clinical_notes_nlp import version
from clinical_notes_nlp.data import corpus as corpus_mod
from clinical_notes_nlp.data import synth
from clinical_notes_nlp.evaluation import grid
from clinical_notes_nlp.features import vocab
from clinical_notes_nlp.general import config, utils
from clinical_notes_nlp.general.exceptions import DomainError, \
        InvalidConfigError
from clinical_notes_nlp.pipeline import Pipeline
from clinical_notes_nlp.text import preprocess



_NAME_MOD_OVERRIDE = 'clinical_notes_nlp.main'

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_IO_ERROR = 2

if __name__ == '__main__':                                  # Ignored by CodeCov
    # Since no unit testing here, code kept at absolute minimum
    logger = logging.getLogger(_NAME_MOD_OVERRIDE)
else:
    logger = logging.getLogger(__name__)



def main(subcommand, log_level, config_path=None, **cli_values):
    """
    Launches the main app for one subcommand.

    Args:
      subcommand (str): One of the registered subcommands.
      log_level (Level/int/str): The desired log level.  This can be specified
        as a level constant from the logging module, or it can be an int or str
        reprenting the numeric value (possibly as a str) or textual name
        (possibly with incorrect case) of the level.
      config_path (str or None): JSON config file, if any.
      cli_values ({str: *}): `RunConfig` values given on the command line;
        None for flags not given.

    Returns:
      (int): The exit code.
    """
    try:
        _config_root_logger(log_level)
    except (TypeError, ValueError) as ex:
        _config_root_logger(logging.NOTSET)
        logger.warning(f'Logger setting failed (Exception: {ex}).  Defaulting'
                + ' to not set.')

    try:
        conf = None
        if config_path is not None:
            conf = config.read_conf_file(config.resolve_conf_path(config_path),
                    os.getcwd())
        run_config = config.build_run_config(subcommand, cli_values, conf)
        _SUBCOMMANDS[subcommand](run_config)
    except DomainError as ex:
        logger.error(f'{ex.__class__.__name__}: {ex}')
        return EXIT_DOMAIN_ERROR
    except OSError as ex:
        logger.error(f'I/O error: {ex}')
        return EXIT_IO_ERROR

    logger.info('Subcommand "%(cmd)s" completed successfully',
            {'cmd': subcommand})
    return EXIT_OK



def _require(run_config, field, flag):
    """
    Returns:
      (*): The value of `field`.

    Raises:
      (InvalidConfigError): The value is missing.
    """
    value = getattr(run_config, field)
    if value is None:
        raise InvalidConfigError(f'"{run_config.subcommand}" requires {flag}')
    return value



def _load_corpus(run_config, apply_filters=True):
    """
    Load the input notes, applying the first-stay and note-type filters when
    enabled.

    Args:
      run_config (RunConfig): The run config.
      apply_filters (bool): False to skip both filters.

    Returns:
      (Corpus): The notes.
    """
    notes = corpus_mod.load_notes(_require(run_config, 'input_path',
            '--input'), run_config.input_format)
    if apply_filters and run_config.first_stay_only:
        notes = corpus_mod.first_stay_filter(notes)
    if apply_filters and run_config.filter_note_types:
        notes = corpus_mod.note_type_filter(notes)
    return notes



def _write_output(path, text):
    """
    Write `text` to `path`, or to stdout when `path` is None.
    """
    if path is None:
        sys.stdout.write(text)
    else:
        utils.write_text_file(path, text)
        logger.info('Wrote "%(path)s"', {'path': path})



def cmd_synth(run_config):
    """
    Generate a synthetic labeled corpus as JSONL.

    Args:
      run_config (RunConfig): The run config.
    """
    out_path = _require(run_config, 'out_path', '--out')
    cfg = synth.SynthConfig(n_docs=run_config.n_docs,
            doc_len_range=(run_config.doc_len_min, run_config.doc_len_max),
            vocab_size=run_config.vocab_size,
            signal_strength=run_config.signal_strength,
            positive_fraction=run_config.positive_fraction,
            n_patients=run_config.n_patients,
            n_providers=run_config.n_providers, seed=run_config.seed)
    corpus_mod.write_notes(synth.generate_corpus(cfg), out_path)



def cmd_preprocess(run_config):
    """
    Turn notes into token documents (JSONL).

    Args:
      run_config (RunConfig): The run config.
    """
    options = preprocess.PreprocessOptions.create(run_config.fold_accents,
            run_config.drop_numeric, run_config.stopwords_path)
    out_path = _require(run_config, 'out_path', '--out')
    docs = preprocess.preprocess_corpus(_load_corpus(run_config), options)
    preprocess.write_token_docs(docs, out_path)



def cmd_split(run_config):
    """
    Split notes into patient/provider-disjoint train and test files.

    Args:
      run_config (RunConfig): The run config.
    """
    train_path = _require(run_config, 'train_out_path', '--train-out')
    test_path = _require(run_config, 'test_out_path', '--test-out')
    train, test = corpus_mod.split_disjoint(_load_corpus(run_config),
            run_config.test_fraction, run_config.seed)
    corpus_mod.write_notes(train, train_path)
    corpus_mod.write_notes(test, test_path)



def cmd_top_terms(run_config):
    """
    List the most frequent tokens of each class.

    Args:
      run_config (RunConfig): The run config.
    """
    options = preprocess.PreprocessOptions.create(run_config.fold_accents,
            run_config.drop_numeric, run_config.stopwords_path)
    docs = preprocess.preprocess_corpus(_load_corpus(run_config).labeled(),
            options)
    lines = []
    for label, terms in sorted(vocab.top_terms(docs, run_config.top_n).items(),
            key=lambda item: item[0].value):
        lines.append(f'{label.value}:')
        lines.extend(f'  {token}\t{count}' for token, count in terms)
    _write_output(run_config.out_path, '\n'.join(lines) + '\n' if lines
            else '')



def cmd_fit(run_config):
    """
    Fit a pipeline on labeled notes and save it as a JSON artifact.

    Args:
      run_config (RunConfig): The run config.
    """
    out_path = _require(run_config, 'out_path', '--out')
    fitted = Pipeline.fit(_load_corpus(run_config), run_config)
    utils.write_text_file(out_path, json.dumps(fitted.to_dict()) + '\n')
    logger.info('Wrote pipeline artifact "%(path)s"', {'path': out_path})



def cmd_predict(run_config):
    """
    Score notes with a saved pipeline and write `id,probability,label` CSV.

    Args:
      run_config (RunConfig): The run config.
    """
    artifact_path = _require(run_config, 'artifact_path', '--model-file')
    with open(artifact_path, encoding='utf_8') as file:
        try:
            payload = json.load(file)
        except (json.JSONDecodeError, UnicodeDecodeError) as ex:
            raise InvalidConfigError(f'Artifact "{artifact_path}" is not valid'
                    + f' JSON: {ex}') from ex
    fitted = Pipeline.from_dict(payload)
    notes = _load_corpus(run_config, apply_filters=False)
    probas = fitted.predict_proba(notes)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['id', 'probability', 'label'])
    for note, proba in zip(notes, probas):
        label = corpus_mod.Label.POSITIVE if proba >= run_config.threshold \
                else corpus_mod.Label.NEGATIVE
        writer.writerow([note.id, f'{proba:.6f}', label.value])
    _write_output(run_config.out_path, buffer.getvalue())



def cmd_grid(run_config):
    """
    Run the full experiment grid and write the CSV and text-table reports.

    Args:
      run_config (RunConfig): The run config.
    """
    report = grid.run_grid(_load_corpus(run_config),
            grid.GridConfig.from_run_config(run_config))
    table = report.to_text_table(reference=run_config.reference)
    if run_config.out_path is None and run_config.table_out_path is None:
        _write_output(None, table)
        return
    if run_config.out_path is not None:
        _write_output(run_config.out_path, report.to_csv())
    if run_config.table_out_path is not None:
        _write_output(run_config.table_out_path, table)



_SUBCOMMANDS = {
    'synth': cmd_synth,
    'preprocess': cmd_preprocess,
    'split': cmd_split,
    'top-terms': cmd_top_terms,
    'fit': cmd_fit,
    'predict': cmd_predict,
    'grid': cmd_grid,
}



def _config_root_logger(log_level):
    """
    Configure the root logger.

    Specifically, this sets the log level for the root logger so it will apply
    to all loggers in this app.

    Args:
      log_level (Level/int/str): The desired log level.  This can be specified
        as a level constant from the logging module, or it can be an int or str
        reprenting the numeric value (possibly as a str) or textual name
        (possibly with incorrect case) of the level.

    Raises:
      (TypeError): Invalid type provided for `log_level`.
      (ValueError): Correct type provided for `log_level`, but is not a valid
        supported value.
    """
    root_logger = logging.getLogger() # Root logger will config app-wide

    handler_stdout = logging.StreamHandler(sys.stdout)
    handler_stdout.setLevel(logging.NOTSET)
    handler_stdout.addFilter(config.LevelFilter(max_inc_level=logging.INFO))
    handler_stderr = logging.StreamHandler()
    handler_stderr.setLevel(logging.WARNING)
    root_logger.addHandler(handler_stdout)
    root_logger.addHandler(handler_stderr)

    formatter = logging.Formatter('<%(name)s> %(levelname)s: %(message)s')
    handler_stdout.setFormatter(formatter)
    handler_stderr.setFormatter(formatter)

    str_value_error = None

    try:
        root_logger.setLevel(log_level.upper())
        return
    except AttributeError:
        # Likely passed in an int, which has no method `upper()` -- retry below
        pass
    except ValueError as ex:
        # ValueError is probably "unknown level" from logger but might be intstr
        str_value_error = ex

    try:
        root_logger.setLevel(int(log_level))
        return
    except (TypeError, ValueError):
        pass

    if str_value_error is not None:
        raise str_value_error

    raise TypeError('Invalid log level type (somehow).  See --help for -l.')



def _add_preprocess_args(parser):
    """
    Preprocessing and corpus-filter flags.
    """
    parser.add_argument('--no-fold-accents', dest='fold_accents',
            action='store_const', const=False,
            help='Do not fold accents (é -> e).')
    parser.add_argument('--keep-numeric', dest='drop_numeric',
            action='store_const', const=False,
            help='Keep numeric tokens such as lab values.')
    parser.add_argument('--stopwords', dest='stopwords_path',
            help='Stopword file, one word per line; defaults to the bundled'
                + ' French list.')
    parser.add_argument('--all-stays', dest='first_stay_only',
            action='store_const', const=False,
            help='Keep notes of later stays and after the first 24h.')
    parser.add_argument('--all-note-types', dest='filter_note_types',
            action='store_const', const=False,
            help='Keep notes of every type, not only admission and'
                + ' evaluation notes.')



def _add_input_args(parser):
    """
    Input notes flags.
    """
    parser.add_argument('--input', dest='input_path',
            help='Notes file (JSONL or CSV).')
    parser.add_argument('--format', dest='input_format',
            choices=('jsonl', 'csv'),
            help='Input format; inferred from the extension if omitted.')



def _add_model_args(parser):
    """
    Representation, selection and classifier hyperparameter flags.
    """
    parser.add_argument('--features', dest='representation',
            help='Representation: bow, tfidf or embed.')
    parser.add_argument('--model', dest='model',
            help='Classifier: lr, gnb or mlp.')
    parser.add_argument('--select-k', dest='select_k', type=int,
            help='Keep the K best features (chi-square for bow/tfidf, ANOVA F'
                + ' for embed).')
    parser.add_argument('--min-df', dest='min_df', type=int,
            help='Minimum document frequency of a vocabulary token.')
    parser.add_argument('--dim', dest='embed_dim', type=int,
            help='Embedding dimension.')
    parser.add_argument('--window', dest='window', type=int,
            help='Skip-gram context window.')
    parser.add_argument('--epochs', dest='embed_epochs', type=int,
            help='Skip-gram training epochs.')
    parser.add_argument('--lr', dest='embed_lr', type=float,
            help='Skip-gram initial learning rate.')
    neg_group = parser.add_mutually_exclusive_group()
    neg_group.add_argument('--neg', dest='negative', type=int,
            help='Negative samples per skip-gram pair.')
    neg_group.add_argument('--full-softmax', dest='negative',
            action='store_const', const=0,
            help='Train skip-gram on the exact full softmax.')
    parser.add_argument('--l2', dest='lr_l2', type=float,
            help='Logistic regression L2 strength.')
    parser.add_argument('--lr-step', dest='lr_step', type=float,
            help='Logistic regression step size.')
    parser.add_argument('--lr-epochs', dest='lr_epochs', type=int,
            help='Logistic regression gradient steps.')
    parser.add_argument('--var-smoothing', dest='var_smoothing', type=float,
            help='Gaussian NB variance smoothing.')
    parser.add_argument('--hidden', dest='mlp_hidden',
            type=lambda s: tuple(config.parse_list_from_conf_string(s,
                config.CastType.INT)),
            help='MLP hidden layer sizes, comma separated (e.g. "100,50").')
    parser.add_argument('--mlp-lr', dest='mlp_lr', type=float,
            help='MLP SGD step size.')
    parser.add_argument('--mlp-epochs', dest='mlp_epochs', type=int,
            help='MLP training epochs.')
    parser.add_argument('--batch-size', dest='mlp_batch_size', type=int,
            help='MLP mini-batch size.')



def _build_parser():
    """
    Returns:
      (ArgumentParser): The parser with all subcommands.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-l', '--log-level',
            default=logging.WARNING,
            help='Set the log level through the app.  Will only report logged'
                + ' messages that are the specified level or more severe.'
                + '  Defaults to "Warning".  Can specify by name or number to'
                + ' match python `logging` module: notset/0, debug/10, info/20,'
                + ' warning/30, error/40, critical/50.')
    common.add_argument('--config', dest='config_path',
            help='JSON config file mirroring the flags.  CLI flags win.')
    common.add_argument('--seed', dest='seed', type=int,
            help='Base seed for all randomness.')

    parser = argparse.ArgumentParser(prog='clinical_notes_nlp',
            description='Clinical note classification toolkit.')
    parser.add_argument('--version',
            action='version',
            version='%(prog)s ' + version.get_full_version_string(),
            help='The version of this application/package.')
    subparsers = parser.add_subparsers(dest='subcommand', required=True)

    sub = subparsers.add_parser('synth', parents=[common],
            help='Generate a synthetic labeled corpus.')
    sub.add_argument('--n', dest='n_docs', type=int, help='Number of notes.')
    sub.add_argument('--signal', dest='signal_strength', type=float,
            help='Per-token probability of a class signal word.')
    sub.add_argument('--positive-fraction', dest='positive_fraction',
            type=float, help='Share of Positive notes.')
    sub.add_argument('--vocab-size', dest='vocab_size', type=int,
            help='Number of synthetic background tokens.')
    sub.add_argument('--n-patients', dest='n_patients', type=int)
    sub.add_argument('--n-providers', dest='n_providers', type=int)
    sub.add_argument('--doc-len-min', dest='doc_len_min', type=int)
    sub.add_argument('--doc-len-max', dest='doc_len_max', type=int)
    sub.add_argument('--out', dest='out_path', help='Output JSONL file.')

    sub = subparsers.add_parser('preprocess', parents=[common],
            help='Tokenize notes into token documents.')
    _add_input_args(sub)
    _add_preprocess_args(sub)
    sub.add_argument('--out', dest='out_path', help='Output JSONL file.')

    sub = subparsers.add_parser('split', parents=[common],
            help='Split notes with no patient/provider shared across sides.')
    _add_input_args(sub)
    _add_preprocess_args(sub)
    sub.add_argument('--test-fraction', dest='test_fraction', type=float)
    sub.add_argument('--train-out', dest='train_out_path')
    sub.add_argument('--test-out', dest='test_out_path')

    sub = subparsers.add_parser('top-terms', parents=[common],
            help='List the most frequent tokens per class.')
    _add_input_args(sub)
    _add_preprocess_args(sub)
    sub.add_argument('--top-n', dest='top_n', type=int)
    sub.add_argument('--out', dest='out_path',
            help='Output text file; stdout if omitted.')

    sub = subparsers.add_parser('fit', parents=[common],
            help='Fit a pipeline and save it as a JSON artifact.')
    _add_input_args(sub)
    _add_preprocess_args(sub)
    _add_model_args(sub)
    sub.add_argument('--out', dest='out_path', help='Output artifact file.')

    sub = subparsers.add_parser('predict', parents=[common],
            help='Score notes with a saved pipeline.')
    _add_input_args(sub)
    sub.add_argument('--model-file', dest='artifact_path',
            help='Pipeline artifact written by "fit".')
    sub.add_argument('--threshold', dest='threshold', type=float,
            help='Positive iff probability >= threshold.')
    sub.add_argument('--out', dest='out_path',
            help='Output CSV file; stdout if omitted.')

    sub = subparsers.add_parser('grid', parents=[common],
            help='Cross-validate every representation x classifier x'
                + ' selection cell.')
    _add_input_args(sub)
    _add_preprocess_args(sub)
    _add_model_args(sub)
    sub.add_argument('--k', dest='k', type=int, help='Number of folds.')
    sub.add_argument('--no-stratify', dest='stratified',
            action='store_const', const=False)
    sub.add_argument('--jobs', dest='jobs', type=int,
            help='Worker processes.')
    sub.add_argument('--threshold', dest='threshold', type=float)
    sub.add_argument('--reference', dest='reference', action='store_const',
            const=True,
            help='Add the published reference scores to the text table.')
    sub.add_argument('--out', dest='out_path', help='Output CSV file.')
    sub.add_argument('--table-out', dest='table_out_path',
            help='Output text table file.')
    return parser



def _setup_and_call_main(_args=None):
    """
    Setup any pre-main operations, such as signals and input arg parsing, then
    call `main()`.  This is basically what would normally be in
    `if __name__ == '__main__':` prior to `main()` call, but this allows unit
    testing a lot more easily.

    Args:
      _args ([str] or None): The list of input args to parse.  Should only be
        used by unit testing.  When executing, it is expected this stays as
        `None` so it will default to taking args from `sys.argv` (i.e. from
        CLI).

    Raises:
      (SystemExit): Always, with the exit code of `main()` (or 2 from argparse
        on a usage error).
    """
    _register_shutdown_signals()

    parsed = _build_parser().parse_args(_args)
    sys.exit(main(**vars(parsed)))



def _register_shutdown_signals(signals=None):
    """
    Registers the shutdown signals that will be supported, handling any platform
    dependent discrepancies gracefully.

    Args:
      signals ([str] or None): String of names of signals in `signal` module, or
        `None` to use defaults.
    """
    if signals is None:
        signals = ('SIGINT', 'SIGTERM', 'SIGQUIT', 'SIGHUP')

    for sig in signals:
        try:
            signal.signal(getattr(signal, sig), _shutdown)
        except AttributeError:
            logger.debug(f'Signal "{sig}" not registered for shutdown.  Likely'
                    + ' not supported by this OS.')
            continue



def _shutdown(signum, _frame):
    """
    Perform all necessary operations to cleanly shutdown when required.

    This is triggered through signal interrupts as registered when this is
    executed as a script.

    Args:
      signum (int): Number of signal received.
      _frame (frame): See signal.signal python docs.
    """
    msg = f'Exiting from signal {str(signum)} ...'
    logger.warning(msg)
    sys.exit(1)



if __name__ == '__main__':                                  # Ignored by CodeCov
    # Since no unit testing here, code kept at absolute minimum
    _setup_and_call_main()
