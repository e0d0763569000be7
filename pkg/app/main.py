"""
Command-line front end.

With no subcommand the line protocol is read from standard input:

    window <N>        start a fresh index of capacity N
    feed <bytes>      shift every byte (\\xHH and \\\\ escapes)
    find <bytes>      print `<count> <pos...>`
    stats             print the index summary line
    audit             print OK or one VIOLATION line per broken invariant
    quit              stop reading

`replay <script>` reads the same protocol from a file and `bench` runs
the benchmark harness. The exit status is 0 iff no ERR or VIOLATION line
was printed.
"""

import argparse
import logging
import string
import sys
from typing import IO, Iterable, Iterator, List, Optional

from .bench import render_table, run_bench, write_csv
from .config import configure_logging, get_settings
from .errors import ConfigError, InvariantViolation, ProtocolError, QueryError
from .slider import SlidingIndex

logger = logging.getLogger('slider.cli')


def decode_escapes(text: str) -> bytes:
    """Protocol text to bytes; every character must be a single byte."""
    out = bytearray()
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == '\\':
            nxt = text[i + 1:i + 2]
            if nxt == '\\':
                out.append(0x5c)
                i += 2
                continue
            digits = text[i + 2:i + 4]
            if nxt == 'x' and len(digits) == 2 and all(d in string.hexdigits for d in digits):
                out.append(int(digits, 16))
                i += 4
                continue
            raise ProtocolError(f'bad escape at column {i + 1}')
        code = ord(ch)
        if code > 0xff:
            raise ProtocolError(f'character {ch!r} is not a byte')
        out.append(code)
        i += 1
    return bytes(out)


class ScriptRunner:
    """Executes protocol lines against one index; output is a pure function of the input."""

    def __init__(self, relative: bool = False, paranoid: bool = False):
        self.relative = relative
        self.paranoid = paranoid
        self.index: Optional[SlidingIndex] = None
        self.errors = 0
        self.violations = 0
        self.stopped = False

    @property
    def failed(self) -> bool:
        return bool(self.errors or self.violations)

    def run(self, lines: Iterable[str]) -> Iterator[str]:
        for line in lines:
            if self.stopped:
                break
            yield from self.run_line(line)

    def run_line(self, line: str) -> List[str]:
        line = line.rstrip('\r\n')
        if not line.strip() or line.lstrip().startswith('#'):
            return []
        command, _, rest = line.partition(' ')
        try:
            return self._dispatch(command, rest)
        except (ProtocolError, QueryError) as exc:
            self.errors += 1
            logger.info('ERR %s (line %r)', exc, line)
            return [f'ERR {exc}']
        except InvariantViolation as exc:
            # the structure cannot be trusted after this
            self.violations += 1
            self.stopped = True
            logger.error('invariant violation: %s', exc)
            return [f'VIOLATION {exc}']

    def _require_index(self) -> SlidingIndex:
        if self.index is None:
            raise ProtocolError('no window; send "window <N>" first')
        return self.index

    def _dispatch(self, command: str, rest: str) -> List[str]:
        if command == 'window':
            try:
                capacity = int(rest.strip())
            except ValueError:
                raise ProtocolError(f'window needs an integer, got {rest.strip()!r}')
            if capacity < 1:
                raise ProtocolError('window must be at least 1')
            self.index = SlidingIndex(capacity, paranoid=self.paranoid)
            return []
        if command == 'feed':
            index = self._require_index()
            index.feed(decode_escapes(rest))
            return []
        if command == 'find':
            index = self._require_index()
            result = index.find(decode_escapes(rest))
            positions = result.relative_to(index.start) if self.relative else result.positions
            return [' '.join(str(v) for v in [result.occ] + positions)]
        if command == 'stats':
            return [self._require_index().stats().line()]
        if command == 'audit':
            report = self._require_index().audit()
            if report.ok:
                return ['OK']
            self.violations += len(report.violations)
            return [f'VIOLATION {v}' for v in report.violations]
        if command == 'quit':
            self.stopped = True
            return []
        raise ProtocolError(f'unknown command {command!r}')


def _read_lines(stream: IO[bytes]) -> Iterator[str]:
    # latin-1 maps every input byte to one character, so feed sees the raw bytes
    for raw in stream:
        yield raw.decode('latin-1')


def run_script(lines: Iterable[str], out: IO[str], relative: bool = False, paranoid: bool = False) -> int:
    runner = ScriptRunner(relative=relative, paranoid=paranoid)
    for line in runner.run(lines):
        out.write(line + '\n')
    out.flush()
    return 1 if runner.failed else 0


def _bench(args, settings) -> int:
    capacity = args.window or settings.window
    try:
        with open(args.corpus, 'rb') as fh:
            corpus = fh.read()
        with open(args.queries, 'rb') as fh:
            queries = [decode_escapes(raw.decode('latin-1').rstrip('\r\n')) for raw in fh]
    except (OSError, ProtocolError) as exc:
        print(f'ERR {exc}', file=sys.stderr)
        return 2
    queries = [q for q in queries if q]
    report = run_bench(corpus, capacity, queries, samples=settings.bench_samples)
    render_table(report)
    if args.csv:
        try:
            write_csv(report, args.csv)
        except OSError as exc:
            print(f'ERR {exc}', file=sys.stderr)
            return 2
    return 0 if all(row.agree for row in report.rows) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='slider', description='Sliding-window substring index')
    parser.add_argument('--relative', action='store_true', help='print window offsets instead of stream positions')
    parser.add_argument('--paranoid', action='store_true', help='audit the index after every shift')
    parser.add_argument('--log-level', default=None, help='level for the slider loggers')
    sub = parser.add_subparsers(dest='command')

    replay = sub.add_parser('replay', help='run a protocol script')
    replay.add_argument('script')

    bench = sub.add_parser('bench', help='compare the index with rescan and rebuild baselines')
    bench.add_argument('--corpus', required=True)
    bench.add_argument('--window', type=int, default=None)
    bench.add_argument('--queries', required=True)
    bench.add_argument('--csv', default=None)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = get_settings()
        configure_logging(args.log_level)
    except ConfigError as exc:
        print(f'ERR {exc}', file=sys.stderr)
        return 2
    relative = args.relative or settings.relative
    paranoid = args.paranoid or settings.paranoid

    if args.command == 'bench':
        if args.window is not None and args.window < 1:
            print('ERR --window must be at least 1', file=sys.stderr)
            return 2
        return _bench(args, settings)
    if args.command == 'replay':
        try:
            with open(args.script, 'rb') as fh:
                return run_script(_read_lines(fh), sys.stdout, relative, paranoid)
        except OSError as exc:
            print(f'ERR {exc}', file=sys.stderr)
            return 2
    return run_script(_read_lines(sys.stdin.buffer), sys.stdout, relative, paranoid)
