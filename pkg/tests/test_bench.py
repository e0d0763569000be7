import csv
import io

from rich.console import Console

from conftest import random_stream
from app.bench import CSV_COLUMNS, render_table, run_bench, sample_points, write_csv
from app.main import main


def test_sample_points_end_at_the_corpus_end():
    assert sample_points(100, 4) == [25, 50, 75, 100]
    assert sample_points(3, 8) == [1, 2, 3]
    assert sample_points(0, 4) == []


def test_bench_rows_agree(rng):
    corpus = random_stream(rng, 3000, 4)
    report = run_bench(corpus, 256, [b'ab', b'abc', b'dd'], samples=3)
    assert len(report.rows) == 9
    assert all(row.agree for row in report.rows)
    assert report.shift_counters.shifts == 3000
    assert report.max_visited_ratio <= 6


def test_adversarial_corpus_stays_bounded():
    report = run_bench(b'a' * 4000, 512, [b'a', b'aaaa', b'ab'], samples=2)
    assert all(row.agree for row in report.rows)
    assert report.max_visited_ratio <= 6
    assert report.ops_per_shift <= 16


def test_empty_query_file_gives_header_only(tmp_path):
    report = run_bench(b'abcabc', 4, [])
    assert report.rows == []
    assert report.max_visited_ratio is None
    assert report.shift_counters.shifts == 6
    path = tmp_path / 'out.csv'
    write_csv(report, str(path))
    assert path.read_text().splitlines() == [','.join(CSV_COLUMNS)]
    console = Console(file=io.StringIO(), width=160)
    render_table(report, console)
    assert 'index_ms' in console.file.getvalue()


def test_bench_subcommand(tmp_path, capsys):
    corpus = tmp_path / 'corpus.bin'
    corpus.write_bytes(b'abracadabra' * 50)
    queries = tmp_path / 'queries.txt'
    queries.write_bytes(b'abra\ncad\n\\x00\n')
    out_csv = tmp_path / 'bench.csv'
    code = main(['bench', '--corpus', str(corpus), '--window', '64', '--queries', str(queries),
                 '--csv', str(out_csv)])
    assert code == 0
    with open(out_csv, newline='') as fh:
        rows = list(csv.DictReader(fh))
    assert {row['query'] for row in rows} == {'abra', 'cad', '\\x00'}
    assert all(row['agree'] == 'True' for row in rows)
    capsys.readouterr()


def test_bench_missing_corpus(tmp_path, capsys):
    code = main(['bench', '--corpus', str(tmp_path / 'nope'), '--window', '8', '--queries', str(tmp_path / 'q')])
    assert code == 2
    assert 'ERR' in capsys.readouterr().err
