"""Command-line surface: subcommands, output formatting and exit codes."""

import argparse
import json
import random
import sys
from pathlib import Path as FilePath
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence
import logging

from src import __version__
from src.algebra.catalog import NatPoset
from src.algebra.homology import h1_class, h1_data
from src.algebra.notation import parse_path
from src.algebra.paths import Path, compose, inverse, render
from src.algebra.poset import (
    Poset,
    is_connected,
    is_upward_directed,
    load_poset,
    triangles,
)
from src.algebra.word_problem import (
    MoveRecord,
    Verdict,
    equal_paths,
    loop_group,
    replay_trace,
)
from src.analyzers import CuntzAnalyzer, NetAnalyzer, RepresentationAnalyzer, SemigroupAnalyzer
from src.config_loader import load_settings
from src.errors import AlgebraError, InputError, VerificationError, WindowEscape
from src.operators.window import build_window, export_operator, represent
from src.schemes import dyadic_infinite_scheme, residue_scheme

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_UNKNOWN = 3

DEFAULT_CONFIG_PATH = str(FilePath('config') / 'config.yaml')


def print_header(text: str):
    """print a formatted header."""
    print(f"\n{'='*70}")
    print(f"  {text}")
    print(f"{'='*70}\n")


def print_section(text: str):
    """print a formatted section header."""
    print(f"\n{'-'*70}")
    print(f"  {text}")
    print(f"{'-'*70}\n")


def _mark(ok: bool) -> str:
    return "✅" if ok else "❌"


def _emit(args: argparse.Namespace, payload: Dict[str, Any], render_text: Callable[[], None]):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        render_text()


# argument helpers

def _common_flags() -> argparse.ArgumentParser:
    """Flags accepted both before and after the subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument('--seed', type=int, default=argparse.SUPPRESS, help="seed for sampled checks")
    common.add_argument('--config', default=argparse.SUPPRESS, help="configuration file")
    common.add_argument(
        '--let',
        action='append',
        default=argparse.SUPPRESS,
        metavar='NAME=EXPR',
        help="name a path expression for reuse as a whole argument",
    )
    return common


def peek_config_path(argv: Sequence[str]) -> str:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--config', default=DEFAULT_CONFIG_PATH)
    known, _ = parser.parse_known_args(list(argv))
    return known.config


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog='pathnet',
        description="Path semigroups of posets, their representations and Cuntz extensions",
        parents=[common],
    )
    parser.add_argument('--version', action='version', version=f"pathnet {__version__}")
    sub = parser.add_subparsers(dest='command', required=True)

    def command(name: str, help_text: str, **kwargs) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help_text, parents=[common], **kwargs)

    def poset_arg(p: argparse.ArgumentParser):
        p.add_argument('--poset', required=True, help="poset JSON file")

    p = command('check-poset', "validate a poset file and summarize it")
    p.add_argument('file')

    p = command('normalize', "normal form of a path expression")
    poset_arg(p)
    p.add_argument('expr')

    p = command('mul', "product p * q")
    poset_arg(p)
    p.add_argument('left')
    p.add_argument('right')

    p = command('inv', "inverse of a path")
    poset_arg(p)
    p.add_argument('expr')

    p = command('eq', "decide equality of two paths")
    poset_arg(p)
    p.add_argument('left')
    p.add_argument('right')
    p.add_argument('--depth', type=int, help="search depth per side")
    p.add_argument('--budget', type=int, help="node budget for the search")

    p = command('loops', "loop-group presentation at a base point")
    poset_arg(p)
    p.add_argument('--base', required=True)

    p = command('h1', "first homology, or the class of a loop")
    poset_arg(p)
    p.add_argument('expr', nargs='?')

    p = command('rep', "representation windows")
    p.add_argument('action', choices=['build', 'verify'])
    poset_arg(p)
    p.add_argument('--len', dest='length', type=int, help="reduced-length bound for non-directed windows")

    p = command('net', "net of isomorphisms")
    p.add_argument('action', choices=['verify'])
    poset_arg(p)
    p.add_argument('--len', dest='length', type=int)
    p.add_argument('--samples-per-chain', type=int)

    p = command('cuntz', "extension generators on a window of N")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--n', type=int, help="residue scheme with n blocks")
    group.add_argument('--infinite', type=int, metavar='M', help="dyadic scheme truncated at M blocks")
    p.add_argument('--window', type=int, default=16)
    p.add_argument('--samples', type=int, help="sampled [a,b] for the ideal products")

    p = command('export', "export operators as JSON")
    p.add_argument('what', choices=['op'])
    poset_arg(p)
    p.add_argument('expr')
    p.add_argument('--out', required=True)
    p.add_argument('--len', dest='length', type=int)
    p.add_argument('--matrix', action='store_true', help="sparse matrix form instead of the index map")

    p = command('verify', "verification suites")
    p.add_argument('suite', choices=['axioms'])
    poset_arg(p)
    p.add_argument('--max-simplices', type=int, default=3)

    p = command('replay', "re-apply a saved equality trace")
    poset_arg(p)
    p.add_argument('left')
    p.add_argument('right')
    p.add_argument('trace', help="JSON file: a list of moves, or an eq --json report")

    return parser


class _Context:
    """Parsed arguments with configuration and named expressions resolved."""

    def __init__(self, args: argparse.Namespace, settings: Mapping[str, Any]):
        self.args = args
        self.settings = settings
        args.json = getattr(args, 'json', False)
        args.seed = getattr(args, 'seed', settings['sampling']['seed'])
        self.names: Dict[str, str] = {}
        for item in getattr(args, 'let', None) or []:
            name, sep, expr = item.partition('=')
            if not sep or not name.strip():
                raise InputError(f"--let expects NAME=EXPR, got {item!r}")
            self.names[name.strip()] = expr
        self._poset: Optional[Poset] = None

    @property
    def poset(self) -> Poset:
        if self._poset is None:
            self._poset = load_poset(self.args.poset)
        return self._poset

    def path(self, source: str) -> Path:
        return parse_path(self.names.get(source, source), self.poset)

    @property
    def search(self) -> Dict[str, int]:
        engine = self.settings['engine']
        depth = getattr(self.args, 'depth', None)
        budget = getattr(self.args, 'budget', None)
        return {
            'depth': engine['depth'] if depth is None else depth,
            'node_budget': engine['node_budget'] if budget is None else budget,
        }

    def window(self):
        length = getattr(self.args, 'length', None)
        return build_window(self.poset, self.settings['window']['length'] if length is None else length)


# subcommands

def _check_poset(ctx: _Context) -> int:
    P = load_poset(ctx.args.file)
    graph = P.graph
    payload = {
        'elements': list(P.elements),
        'relations': len(P.leq) - len(P.elements),
        'edges': graph.number_of_edges(),
        'triangles': len(triangles(P)),
        'connected': is_connected(P),
        'upward_directed': is_upward_directed(P),
    }

    def text():
        print_header(f"Poset {ctx.args.file}")
        for key in ('elements', 'relations', 'edges', 'triangles', 'connected', 'upward_directed'):
            print(f"{key}: {payload[key]}")

    _emit(ctx.args, payload, text)
    return EXIT_OK


def _print_path(ctx: _Context, p: Path) -> int:
    _emit(ctx.args, {'path': render(p)}, lambda: print(render(p)))
    return EXIT_OK


def _normalize(ctx: _Context) -> int:
    return _print_path(ctx, ctx.path(ctx.args.expr))


def _mul(ctx: _Context) -> int:
    return _print_path(ctx, compose(ctx.poset, ctx.path(ctx.args.left), ctx.path(ctx.args.right)))


def _inv(ctx: _Context) -> int:
    return _print_path(ctx, inverse(ctx.path(ctx.args.expr)))


def _eq(ctx: _Context) -> int:
    p, q = ctx.path(ctx.args.left), ctx.path(ctx.args.right)
    verdict = equal_paths(ctx.poset, p, q, **ctx.search)
    payload = {'left': render(p), 'right': render(q), **verdict.to_dict()}

    def text():
        print(verdict.verdict.value)
        if verdict.certificate is not None:
            print(f"certificate: {verdict.certificate.describe()}")
        for move in verdict.trace:
            print(f"  {move.side}: {move.kind} at {move.position} {list(move.operands)} -> {list(move.support)}")

    _emit(ctx.args, payload, text)
    return {Verdict.EQUAL: EXIT_OK, Verdict.DISTINCT: EXIT_FAILED, Verdict.UNKNOWN: EXIT_UNKNOWN}[verdict.verdict]


def _loops(ctx: _Context) -> int:
    presentation = loop_group(ctx.poset, ctx.args.base)

    def text():
        print_header(f"Loop group at {presentation.base}")
        print(f"Generators: {presentation.generator_count}, relators: {len(presentation.relators)}")
        for edge, g in zip(presentation.generator_edges, presentation.generators):
            print(f"  {edge[0]}-{edge[1]}: {render(g)}")
        print(f"Trivial: {presentation.trivial}")

    _emit(ctx.args, presentation.to_dict(), text)
    return EXIT_OK


def _h1(ctx: _Context) -> int:
    H = h1_data(ctx.poset)
    payload: Dict[str, Any] = {'rank': H.rank, 'torsion': list(H.torsion)}
    if ctx.args.expr:
        loop = ctx.path(ctx.args.expr)
        payload['loop'] = render(loop)
        payload['class'] = list(h1_class(H, loop))

    def text():
        print(f"H1 = Z^{H.rank}" + ''.join(f" + Z/{d}" for d in H.torsion))
        if 'class' in payload:
            print(f"class of {payload['loop']}: {payload['class']}")

    _emit(ctx.args, payload, text)
    return EXIT_OK


def _rep(ctx: _Context) -> int:
    W = ctx.window()
    if ctx.args.action == 'build':
        payload = {'size': len(W), 'directed': W.directed, 'basis': W.labels()}

        def text():
            print_header(f"Window of {len(W)} basis paths")
            for i, label in enumerate(W.labels()):
                print(f"  {i}: {label}")

        _emit(ctx.args, payload, text)
        return EXIT_OK

    analyzer = RepresentationAnalyzer(W)
    checks: Dict[str, Any] = {
        'partial_isometry': analyzer.partial_isometry_check(),
        'homomorphism': analyzer.homomorphism_check(),
        'invariance': analyzer.invariance_check(),
    }
    projectors = {'checked': 0, 'escaped': 0, 'failures': []}
    for p in W.basis:
        try:
            report = analyzer.projector_check(p)
        except WindowEscape:
            projectors['escaped'] += 1
            continue
        projectors['checked'] += 1
        if not report['holds']:
            projectors['failures'].append(report['path'])
    projectors['passed'] = not projectors['failures']
    checks['projectors'] = projectors

    if W.directed:
        checks['rank_law'] = analyzer.rank_law_check()
        rng = random.Random(ctx.args.seed)
        samples = ctx.settings['sampling']['samples']
        for _ in range(samples):
            analyzer.block_decomposition_check(analyzer.sample_combination(rng))
        checks['block_decomposition'] = {'samples': samples, 'passed': True}

    passed = all(c['passed'] for c in checks.values())
    payload = {'size': len(W), 'directed': W.directed, 'checks': checks, 'passed': passed}

    def text():
        print_header(f"Representation on {len(W)} basis paths")
        for name, c in checks.items():
            print(f"{_mark(c['passed'])} {name}")

    _emit(ctx.args, payload, text)
    return EXIT_OK if passed else EXIT_FAILED


def _net(ctx: _Context) -> int:
    analyzer = NetAnalyzer(ctx.window())
    unitarity = analyzer.unitarity_check()
    report = analyzer.verify_net(ctx.args.samples_per_chain)
    passed = unitarity['passed'] and not report['failures']
    payload = {**report, 'unitarity': unitarity, 'passed': passed}

    def text():
        print_header("Net of isomorphisms")
        print(f"{_mark(unitarity['passed'])} unitarity on {unitarity['pairs_checked']} related pairs")
        print(f"{_mark(not report['failures'])} cocycle law on {report['chains_checked']} chains")
        for failure in report['failures']:
            print(f"  failed: {failure['chain']}")

    _emit(ctx.args, payload, text)
    return EXIT_OK if passed else EXIT_FAILED


def _cuntz(ctx: _Context) -> int:
    if ctx.args.n is not None:
        scheme, upto = residue_scheme(ctx.args.n), None
    else:
        scheme, upto = dyadic_infinite_scheme(), ctx.args.infinite
    W = build_window(NatPoset().window(ctx.args.window))
    samples = ctx.args.samples or ctx.settings['sampling']['samples']
    evidence = CuntzAnalyzer(scheme).quotient_generator_evidence(W, upto, count=samples, seed=ctx.args.seed)
    passed = evidence['relations_certified'] and evidence['ideal_certified']

    def text():
        print_header(f"{scheme.name} on a window of N = {evidence['N']}")
        for relation in evidence['generator_relations']['relations']:
            print(f"{_mark(relation['holds'])} {relation['name']} on a < {relation['certified_region']['a_lt']}")
        if evidence['generator_relations']['defect_support']:
            print(f"defect support: {len(evidence['generator_relations']['defect_support'])} indices")
        ideal = evidence['ideal_closure']
        print_section("Ideal products")
        print(f"{_mark(ideal['holds'])} ideal products: {ideal['checked']} checked, {ideal['outside_window']} outside")
        print(f"quotient isomorphism: {evidence['quotient_isomorphism']}")

    _emit(ctx.args, evidence, text)
    return EXIT_OK if passed else EXIT_FAILED


def _export(ctx: _Context) -> int:
    W = ctx.window()
    T = represent(W, ctx.path(ctx.args.expr))
    payload = export_operator(W, T.to_matrix() if ctx.args.matrix else T, ctx.args.out)

    def text():
        print(f"Wrote {ctx.args.out} ({len(payload['basis'])} basis paths)")

    _emit(ctx.args, {'out': ctx.args.out, 'basis': len(payload['basis'])}, text)
    return EXIT_OK


def _verify(ctx: _Context) -> int:
    report = SemigroupAnalyzer(ctx.poset, ctx.args.max_simplices).run_all()

    def text():
        print_header(f"Semigroup laws on {report['paths']} paths")
        for name, c in report['checks'].items():
            print(f"{_mark(c['passed'])} {name}: {c['checked']} cases")
            for failure in c['failures']:
                print(f"    {failure}")

    _emit(ctx.args, report, text)
    return EXIT_OK if report['passed'] else EXIT_FAILED


def _load_trace(path: str) -> List[MoveRecord]:
    file = FilePath(path)
    if not file.exists():
        raise InputError(f"Trace file not found: {path}")
    try:
        data = json.loads(file.read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        raise InputError(f"Trace file {path} is not valid JSON: {e}") from e
    if isinstance(data, dict):
        data = data.get('trace', [])
    if not isinstance(data, list):
        raise InputError("A trace is a list of move records")
    return [MoveRecord.from_dict(m) for m in data]


def _replay(ctx: _Context) -> int:
    p, q = ctx.path(ctx.args.left), ctx.path(ctx.args.right)
    trace = _load_trace(ctx.args.trace)
    meeting = replay_trace(ctx.poset, p, q, trace)
    payload = {'moves': len(trace), 'meets_at': render(meeting)}
    _emit(ctx.args, payload, lambda: print(f"Replayed {len(trace)} moves; both sides reach {render(meeting)}"))
    return EXIT_OK


COMMANDS: Dict[str, Callable[[_Context], int]] = {
    'check-poset': _check_poset,
    'normalize': _normalize,
    'mul': _mul,
    'inv': _inv,
    'eq': _eq,
    'loops': _loops,
    'h1': _h1,
    'rep': _rep,
    'net': _net,
    'cuntz': _cuntz,
    'export': _export,
    'verify': _verify,
    'replay': _replay,
}


def run_command(argv: Sequence[str], settings: Optional[Mapping[str, Any]] = None) -> int:
    """Run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT

    try:
        if settings is None:
            settings = load_settings(getattr(args, 'config', DEFAULT_CONFIG_PATH))
        ctx = _Context(args, settings)
        return COMMANDS[args.command](ctx)
    except (InputError, AlgebraError) as e:
        logger.error(f"{args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as e:
        logger.warning(f"{args.command}: {e}")
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_FAILED