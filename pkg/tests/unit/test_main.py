#!/usr/bin/env python3
"""
Tests the clinical_notes_nlp.main functionality.

Per [pytest](https://docs.pytest.org/en/reorganize-docs/new-docs/user/naming_conventions.html),
all tiles, classes, and methods will be prefaced with `test_/Test` to comply
with auto-discovery (others may exist, but will not be part of test suite
directly).

Module Attributes:
  N/A
"""
# pylint: disable=protected-access # Allow for purpose of testing those elements

import csv
import json
import logging
import signal

import pytest

from clinical_notes_nlp import main
from clinical_notes_nlp import version
from clinical_notes_nlp.data.corpus import Label, load_notes
from clinical_notes_nlp.general import config
from clinical_notes_nlp.general.exceptions import KTooLargeError



@pytest.fixture(autouse=True)
def fixture_ensure_logging_framework_not_altered():
    """
    This fixes an issue where some tests could fail when run together.  This is
    related to the StreamHandler use by the root logger in this project and
    `capsys`.

    Since `main.py` is the only place where the `_config_root_logger()` calls
    are made (at least one of those tests using `capsys`), this is the only test
    module that should need this.

    Thanks to gaborbernat for this code suggestion in a comment on
    [pytest-dev/pytest#14](https://github.com/pytest-dev/pytest/issues/14).
    """
    before_handlers = list(logging.getLogger().handlers)
    before_level = logging.getLogger().level
    yield
    logging.getLogger().handlers = before_handlers
    logging.getLogger().setLevel(before_level)



@pytest.fixture(name='run_cli')
def fixture_run_cli(monkeypatch):
    """
    Returns a runner for full command lines that gives back the exit code.
    Shutdown signals are left alone so pytest keeps its own handlers.
    """
    monkeypatch.setattr(main, '_register_shutdown_signals', lambda: None)

    def run_cli(cmd_line):
        """
        Run one command line; `cmd_line` is a list of args.
        """
        with pytest.raises(SystemExit) as ex:
            main._setup_and_call_main(cmd_line)
        return ex.value.code

    return run_cli



def _write_jsonl(path, records):
    """
    Write records as a JSONL notes file.
    """
    path.write_text(''.join(json.dumps(r) + '\n' for r in records),
            encoding='utf_8')
    return str(path)



def test_global():
    """
    Tests items at the global scope not otherwise fully tested.
    """
    # Since only used (right now) for logger name which is untested code, this
    #  gives the best chance of detecting a mistake there.
    assert main._NAME_MOD_OVERRIDE == 'clinical_notes_nlp.main'
    assert sorted(main._SUBCOMMANDS) == ['fit', 'grid', 'predict',
            'preprocess', 'split', 'synth', 'top-terms']
    assert sorted(main._SUBCOMMANDS) == sorted(config.SUBCOMMAND_NAMES)



def test_main(monkeypatch, caplog):
    """
    Tests the `main()` method's logging and exit codes.
    """
    seen = []
    monkeypatch.setitem(main._SUBCOMMANDS, 'synth', seen.append)

    def raise_domain_error(_run_config):
        raise KTooLargeError('k=7 exceeds the 6 samples')

    def raise_os_error(_run_config):
        raise OSError('disk full')

    monkeypatch.setitem(main._SUBCOMMANDS, 'grid', raise_domain_error)
    monkeypatch.setitem(main._SUBCOMMANDS, 'fit', raise_os_error)

    caplog.set_level(logging.INFO)

    caplog.clear()
    assert main.main('synth', logging.WARNING) == main.EXIT_OK
    assert caplog.record_tuples == []
    assert seen[-1].subcommand == 'synth'

    caplog.clear()
    assert main.main('synth', logging.INFO, n_docs=12, seed=None) == 0
    assert caplog.record_tuples == [
        ('clinical_notes_nlp.main', logging.INFO,
            'Subcommand "synth" completed successfully'),
    ]
    assert seen[-1].n_docs == 12
    assert seen[-1].seed == 1

    caplog.clear()
    assert main.main('synth', 'bad log level') == 0
    assert caplog.record_tuples == [
        ('clinical_notes_nlp.main', logging.WARNING,
            "Logger setting failed (Exception: Unknown level: 'BAD LOG LEVEL')."
                + "  Defaulting to not set."),
        ('clinical_notes_nlp.main', logging.INFO,
            'Subcommand "synth" completed successfully'),
    ]

    caplog.clear()
    assert main.main('grid', logging.WARNING) == main.EXIT_DOMAIN_ERROR
    assert caplog.record_tuples == [
        ('clinical_notes_nlp.main', logging.ERROR,
            'KTooLargeError: k=7 exceeds the 6 samples'),
    ]

    caplog.clear()
    assert main.main('fit', logging.WARNING) == main.EXIT_IO_ERROR
    assert caplog.record_tuples == [
        ('clinical_notes_nlp.main', logging.ERROR, 'I/O error: disk full'),
    ]

    caplog.clear()
    assert main.main('grid', logging.WARNING, select_k=0) == 1
    assert caplog.record_tuples[0][1] == logging.ERROR
    assert caplog.record_tuples[0][2].startswith('KTooSmallError: ')



def test_main_config_file(monkeypatch, tmp_path):
    """
    Tests the `main()` method with a config file: values apply, CLI values win,
    and unreadable files are I/O errors.
    """
    seen = []
    monkeypatch.setitem(main._SUBCOMMANDS, 'grid', seen.append)
    conf_path = tmp_path / 'run.json'
    conf_path.write_text(json.dumps({'seed': 9, 'grid': {'k': 3, 'jobs': 2}}),
            encoding='utf_8')

    assert main.main('grid', logging.WARNING, config_path=str(conf_path),
            jobs=4) == 0
    assert (seen[-1].seed, seen[-1].k, seen[-1].jobs) == (9, 3, 4)

    assert main.main('grid', logging.WARNING,
            config_path=str(tmp_path / 'missing.json')) == 2

    conf_path.write_text('[1, 2]', encoding='utf_8')
    assert main.main('grid', logging.WARNING, config_path=str(conf_path)) == 1



def test__config_root_logger(capsys):
    """
    Tests the `_config_root_logger()` method.
    """
    root_logger = logging.getLogger()
    assert root_logger.getEffectiveLevel() == logging.WARNING

    main._config_root_logger('info')
    assert root_logger.getEffectiveLevel() == logging.INFO

    main._config_root_logger(15)
    assert root_logger.getEffectiveLevel() == 15

    main._config_root_logger('20')
    assert root_logger.getEffectiveLevel() == logging.INFO

    with pytest.raises(ValueError) as ex:
        main._config_root_logger('invalid-level')
    assert "Unknown level: 'INVALID-LEVEL'" in str(ex.value)

    with pytest.raises(TypeError) as ex:
        main._config_root_logger([10])
    assert 'Invalid log level type (somehow).  See --help for -l.' \
            in str(ex.value)

    main._config_root_logger(logging.DEBUG)
    main.logger.debug('debug log msg')
    main.logger.warning('warning log msg')
    stdmsg = capsys.readouterr()
    assert '<clinical_notes_nlp.main> DEBUG: debug log msg' in stdmsg.out
    assert 'warning log msg' not in stdmsg.out
    assert '<clinical_notes_nlp.main> WARNING: warning log msg' in stdmsg.err
    assert 'debug log msg' not in stdmsg.err



def test__setup_and_call_main(monkeypatch):
    """
    Tests the `_setup_and_call_main()` method's argument parsing.
    """
    captured = {}

    def mock_main(**kwargs):
        """
        Record what `main()` would have received.
        """
        captured.clear()
        captured.update(kwargs)
        return 0

    monkeypatch.setattr(main, 'main', mock_main)
    monkeypatch.setattr(main, '_register_shutdown_signals', lambda: None)

    with pytest.raises(SystemExit) as ex:
        main._setup_and_call_main('fit --input a.jsonl --features bow'
                ' --hidden 64,32 --full-softmax -l info --seed 4'.split())
    assert ex.value.code == 0
    assert captured['subcommand'] == 'fit'
    assert captured['log_level'] == 'info'
    assert captured['config_path'] is None
    assert captured['input_path'] == 'a.jsonl'
    assert captured['representation'] == 'bow'
    assert captured['mlp_hidden'] == (64, 32)
    assert captured['negative'] == 0
    assert captured['seed'] == 4
    assert captured['select_k'] is None
    assert captured['fold_accents'] is None

    with pytest.raises(SystemExit) as ex:
        main._setup_and_call_main('preprocess --keep-numeric'.split())
    assert captured['drop_numeric'] is False
    assert captured['log_level'] == logging.WARNING

    for bad_args in ('', '--unknown-arg', 'grid --neg 3 --full-softmax',
            'fit --k 3', 'preprocess --format xml'):
        with pytest.raises(SystemExit) as ex:
            main._setup_and_call_main(bad_args.split())
        assert ex.value.code == 2



def test_version_flag(capsys, run_cli):
    """
    Tests the `--version` flag.
    """
    assert run_cli(['--version']) == 0
    stdout, _ = capsys.readouterr()
    assert stdout.startswith(f'clinical_notes_nlp v{version._VERSION}_')



def test_cli_workflow(tmp_path, capsys, run_cli):
    """
    Tests the subcommands chained the way a user would run them.
    """
    notes_path = str(tmp_path / 'notes.jsonl')
    assert run_cli(['synth', '--n', '60', '--signal', '0.8', '--vocab-size',
            '40', '--n-patients', '30', '--n-providers', '10', '--doc-len-min',
            '10', '--doc-len-max', '20', '--seed', '3', '--out',
            notes_path]) == 0
    assert len(load_notes(notes_path)) == 60

    train_path = str(tmp_path / 'train.jsonl')
    test_path = str(tmp_path / 'test.jsonl')
    assert run_cli(['split', '--input', notes_path, '--test-fraction', '0.3',
            '--train-out', train_path, '--test-out', test_path]) == 0
    train, test = load_notes(train_path), load_notes(test_path)
    assert len(train) + len(test) == 60
    assert not train.patient_ids() & test.patient_ids()

    model_path = str(tmp_path / 'model.json')
    assert run_cli(['fit', '--input', train_path, '--features', 'tfidf',
            '--model', 'lr', '--select-k', '10', '--out', model_path]) == 0
    with open(model_path, encoding='utf_8') as file:
        assert json.load(file)['kind'] == 'pipeline'

    predictions_path = tmp_path / 'pred.csv'
    assert run_cli(['predict', '--input', test_path, '--model-file',
            model_path, '--out', str(predictions_path)]) == 0
    rows = list(csv.reader(predictions_path.read_text(encoding='utf_8')
            .splitlines()))
    assert rows[0] == ['id', 'probability', 'label']
    assert [r[0] for r in rows[1:]] == [n.id for n in test]
    for _, proba, label in rows[1:]:
        assert len(proba.split('.')[1]) == 6
        assert label == (Label.POSITIVE.value if float(proba) >= 0.5
                else Label.NEGATIVE.value)

    capsys.readouterr()
    assert run_cli(['top-terms', '--input', notes_path, '--top-n', '2']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'Negative:'
    assert lines[3] == 'Positive:'
    assert len(lines) == 6
    assert lines[1].startswith('  ') and lines[1].count('\t') == 1

    grid_csv = tmp_path / 'grid.csv'
    grid_table = tmp_path / 'grid.txt'
    assert run_cli(['grid', '--input', notes_path, '--k', '2', '--dim', '8',
            '--epochs', '1', '--hidden', '8', '--mlp-epochs', '10',
            '--lr-epochs', '50', '--out', str(grid_csv), '--table-out',
            str(grid_table), '--reference']) == 0
    assert len(grid_csv.read_text(encoding='utf_8').splitlines()) == 19
    assert 'REF ACC' in grid_table.read_text(encoding='utf_8')



def test_cli_errors(tmp_path, run_cli):
    """
    Tests the exit codes of failing command lines.
    """
    notes_path = _write_jsonl(tmp_path / 'notes.jsonl', [
        {'id': f'n{i}', 'patient_id': f'p{i}', 'provider_id': f'md{i}',
            'text': 'civ cec' if i % 2 else 'po sop', 'label':
            'Positive' if i % 2 else 'Negative'}
        for i in range(6)])

    assert run_cli(['fit', '--input', notes_path, '--select-k', '0',
            '--out', str(tmp_path / 'm.json')]) == 1
    assert run_cli(['synth']) == 1
    assert run_cli(['preprocess', '--input', str(tmp_path / 'missing.jsonl'),
            '--out', str(tmp_path / 'docs.jsonl')]) == 2

    model_path = tmp_path / 'model.json'
    assert run_cli(['fit', '--input', notes_path, '--features', 'bow',
            '--model', 'gnb', '--out', str(model_path)]) == 0
    payload = json.loads(model_path.read_text(encoding='utf_8'))
    payload['version'] = 999
    model_path.write_text(json.dumps(payload), encoding='utf_8')
    assert run_cli(['predict', '--input', notes_path, '--model-file',
            str(model_path)]) == 1

    model_path.write_text('not json', encoding='utf_8')
    assert run_cli(['predict', '--input', notes_path, '--model-file',
            str(model_path)]) == 1

    bad_notes = tmp_path / 'bad.jsonl'
    bad_notes.write_text('{"id": "x"}\n', encoding='utf_8')
    assert run_cli(['preprocess', '--input', str(bad_notes), '--out',
            str(tmp_path / 'docs.jsonl')]) == 1



def test_cli_preprocess(tmp_path, run_cli):
    """
    Tests the `preprocess` subcommand's flags and empty input.
    """
    empty_path = tmp_path / 'empty.jsonl'
    empty_path.write_text('', encoding='utf_8')
    docs_path = tmp_path / 'docs.jsonl'
    assert run_cli(['preprocess', '--input', str(empty_path), '--out',
            str(docs_path)]) == 0
    assert docs_path.read_text(encoding='utf_8') == ''

    notes_path = _write_jsonl(tmp_path / 'notes.jsonl', [
        {'id': 'n1', 'patient_id': 'p1', 'provider_id': 'md1',
            'text': 'FE 1200 mg', 'label': 'Positive'},
        {'id': 'n2', 'patient_id': 'p2', 'provider_id': 'md2',
            'text': 'Note tardive', 'label': 'Negative', 'stay_index': 2},
    ])
    assert run_cli(['preprocess', '--input', notes_path, '--out',
            str(docs_path)]) == 0
    docs = [json.loads(line) for line in
            docs_path.read_text(encoding='utf_8').splitlines()]
    assert docs == [{'note_id': 'n1', 'tokens': ['fe', 'mg'],
            'label': 'Positive'}]

    assert run_cli(['preprocess', '--input', notes_path, '--out',
            str(docs_path), '--keep-numeric', '--all-stays']) == 0
    docs = [json.loads(line) for line in
            docs_path.read_text(encoding='utf_8').splitlines()]
    assert docs[0]['tokens'] == ['fe', '1200', 'mg']
    assert [d['note_id'] for d in docs] == ['n1', 'n2']



def test_cli_preprocess_accents(tmp_path, run_cli):
    """
    Tests the `--no-fold-accents` flag of the `preprocess` subcommand.
    """
    notes_path = _write_jsonl(tmp_path / 'notes.jsonl', [
        {'id': 'n1', 'patient_id': 'p1', 'provider_id': 'md1',
            'text': 'Dyspnée sévère', 'label': 'Positive'},
    ])
    docs_path = tmp_path / 'docs.jsonl'
    assert run_cli(['preprocess', '--input', notes_path, '--out',
            str(docs_path)]) == 0
    assert json.loads(docs_path.read_text(encoding='utf_8'))['tokens'] \
            == ['dyspnee', 'severe']

    assert run_cli(['preprocess', '--input', notes_path, '--out',
            str(docs_path), '--no-fold-accents']) == 0
    assert json.loads(docs_path.read_text(encoding='utf_8'))['tokens'] \
            == ['dyspnée', 'sévère']



def test_cli_predict_csv_quoting(tmp_path, run_cli):
    """
    Tests that `predict` quotes note ids holding CSV delimiters.
    """
    records = [
        {'id': f'n{i},x' if i == 0 else f'n{i}"q', 'patient_id': f'p{i}',
            'provider_id': f'md{i}', 'text': 'civ cec' if i % 2
            else 'po sop', 'label': 'Positive' if i % 2 else 'Negative'}
        for i in range(6)]
    notes_path = _write_jsonl(tmp_path / 'notes.jsonl', records)
    model_path = str(tmp_path / 'model.json')
    assert run_cli(['fit', '--input', notes_path, '--features', 'bow',
            '--model', 'gnb', '--out', model_path]) == 0

    predictions_path = tmp_path / 'pred.csv'
    assert run_cli(['predict', '--input', notes_path, '--model-file',
            model_path, '--out', str(predictions_path)]) == 0
    with open(predictions_path, encoding='utf_8', newline='') as file:
        rows = list(csv.reader(file))
    assert all(len(row) == 3 for row in rows)
    assert [row[0] for row in rows[1:]] == [r['id'] for r in records]



def test_cli_invalid_utf8(tmp_path, run_cli):
    """
    Tests that a notes file with invalid UTF-8 exits with the validation code.
    """
    bad_path = tmp_path / 'bad.jsonl'
    bad_path.write_bytes(b'\xff\xfe{"id": "n1"}\n')
    assert run_cli(['preprocess', '--input', str(bad_path), '--out',
            str(tmp_path / 'docs.jsonl')]) == 1



def test__register_shutdown_signals(monkeypatch, caplog):
    """
    Tests the `_register_shutdown_signals()` method.
    """
    def mock_shutdown(signum, _frame):
        """
        Instead of actually shutting down via sys.exit(), just log a message.
        """
        main.logger.warning(f'Would have exited from signal {str(signum)}')

    monkeypatch.setattr(main, '_shutdown', mock_shutdown)

    caplog.set_level(logging.DEBUG)

    hardcoded_signals = ['SIGINT', 'SIGTERM', 'SIGQUIT', 'SIGHUP']
    default_handlers = {}
    for sig_name in hardcoded_signals:
        sig = getattr(signal, sig_name, None)
        if sig is not None:
            default_handlers[sig] = signal.getsignal(sig)

    try:
        main._register_shutdown_signals()
        for sig in default_handlers:
            assert signal.getsignal(sig) \
                    == mock_shutdown  # pylint: disable=comparison-with-callable

        caplog.clear()
        main._register_shutdown_signals(['completely_bogus_signal'])
        assert caplog.record_tuples == [
            ('clinical_notes_nlp.main', logging.DEBUG,
                'Signal "completely_bogus_signal" not registered for shutdown.'
                    + '  Likely not supported by this OS.'),
        ]
    finally:
        for sig, handler in default_handlers.items():
            signal.signal(sig, handler)



def test__shutdown(caplog):
    """
    Tests the `_shutdown()` method.

    ...might be best to keep this to the end of the file.  It seems some code
    intellisense doesn't like this handling of something that calls sys.exit()
    and will instead assume nothing else can possibly run.
    """
    caplog.set_level(logging.WARNING)

    caplog.clear()
    with pytest.raises(SystemExit) as ex:
        main._shutdown(signal.SIGINT, None)
    assert '1' in str(ex.value)
    assert caplog.record_tuples == [
        ('clinical_notes_nlp.main', logging.WARNING,
            'Exiting from signal Signals.SIGINT ...'),
    ]
