"""
Command-line interface for the Snevily verifier.

Every subcommand prints its structured result on standard out and exits with
0 on success, 1 when a checked property is violated (the offending instance is
printed), and 2 on usage, parse or configuration errors. Diagnostics go to
standard error through logging.
"""

import argparse
import dataclasses
import json
import logging
import sys
from typing import Any, Dict, List, Optional

import pandas as pd

from . import __version__
from .config.settings import RunConfig, Settings, load_config
from .core.abelian_group import (
    GroupSpec, enumerate_elements, format_element, format_elements, format_group_spec, parse_elements,
    parse_group_spec,
)
from .core.characters import character_table, parse_characters
from .core.fields import build_field, format_elem
from .core.linalg import determinant
from .core.output_manager import OutputManager
from .exceptions import ConfigurationError, ParseError, SnevilyError
from .analyzers.matroid import (
    dual_witness, theorem1_characters, theorem2_witness_to_json, verify_theorem2_witness, verify_witness_json,
    witness_to_json, WITNESS_KINDS,
)
from .analyzers.snevily import (
    sum_matrix, count_attaining, find_snevily_permutation, lemma4_indicator_phi, lemma4_permutation,
    multiset_signature, permutation_witness_to_json, reduce_mod_char, snevily_polynomial,
    verify_permutation_witness_json, verify_theorem1_witness,
)
from .analyzers.sweeps import SUITES, THEOREM3_ORDERS, SweepReport, SweepRunner

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


class SnevilyCLI:
    """Command-line front end for the verifier"""

    def __init__(self):
        self.settings = Settings()
        self.output_manager: Optional[OutputManager] = None

    def setup_parser(self) -> argparse.ArgumentParser:
        """Setup command line argument parser"""
        parser = argparse.ArgumentParser(
            prog="snevily-verifier",
            description="Exact verification of common character bases and distinct-sum permutations "
                        "in finite abelian groups",
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog="""
Examples:
  # Order and exponent of Z_2 x Z_3
  snevily-verifier group info --group 2,3

  # Common character basis of A and B over GF(4)
  snevily-verifier theorem1 --group 3 --field gf:2 --set-a "(0);(1)" --set-b "(0);(1)"

  # Permutation with pairwise distinct sums
  snevily-verifier snevily --group 5 --set-a "(0);(1);(2)" --set-b "(0);(1);(3)"

  # Acceptance sweep with reduced bounds, saved under outputs/
  snevily-verifier --save sweep --suite lemma4 --max-m 8 --max-k 3
            """
        )

        parser.add_argument('--version', action='version', version=f'Snevily Verifier v{__version__}')
        parser.add_argument('--output-dir', type=str, default=None,
                            help='Base directory for saved files (default: from config, "outputs")')
        parser.add_argument('--config', type=str, default=None,
                            help='Settings JSON file (default: ~/.config/snevily_verifier/config.json)')
        parser.add_argument('--verbose', '-v', action='store_true', help='Enable debug logging on stderr')

        common = argparse.ArgumentParser(add_help=False)
        common.add_argument('--format', dest='output_format', choices=RunConfig.OUTPUT_FORMATS, default='text',
                            help='Output format (default: text)')
        common.add_argument('--save', action='store_true', help='Also write results under the output directory')
        common.add_argument('--run-name', type=str, default=None, help='Base name for saved files')
        common.add_argument('--seed', type=int, default=None, help='RNG seed (default: from config, 0)')
        common.add_argument('--max-perm-k', type=int, default=None, help='Budget on k for k! enumerations')
        common.add_argument('--max-subsets', type=int, default=None, help='Budget on C(m,k) enumerations')

        instance = argparse.ArgumentParser(add_help=False)
        instance.add_argument('--group', required=True, help='Comma-separated moduli, e.g. 2,3,9')
        instance.add_argument('--field', default='cyc', help='gf:p or cyc (default: cyc)')

        pair = argparse.ArgumentParser(add_help=False)
        pair.add_argument('--set-a', required=True, help='Elements separated by ";", e.g. "(0);(1)"')
        pair.add_argument('--set-b', required=True, help='Elements separated by ";"')

        subparsers = parser.add_subparsers(dest='command', help='Available commands')

        group_parser = subparsers.add_parser('group', parents=[common, instance], help='Group information')
        group_parser.add_argument('action', choices=['info'])

        field_parser = subparsers.add_parser('field', parents=[common, instance],
                                             help='Build the field context for a group')
        field_parser.add_argument('action', choices=['build'])

        subparsers.add_parser('chartable', parents=[common, instance],
                              help='Character table and its determinant')
        subparsers.add_parser('theorem1', parents=[common, instance, pair],
                              help='Common character basis of two k-subsets')

        theorem2_parser = subparsers.add_parser('theorem2', parents=[common, instance],
                                                help='Common element basis of two character sets')
        theorem2_parser.add_argument('--chars-x', required=True, help='Dual coordinates separated by ";"')
        theorem2_parser.add_argument('--chars-psi', required=True, help='Dual coordinates separated by ";"')

        subparsers.add_parser('lemma4', parents=[common, instance, pair],
                              help='Permutation with a uniquely attained sum multiset')
        subparsers.add_parser('snevily', parents=[common, instance, pair],
                              help='Permutation with pairwise distinct sums, or none')

        poly_parser = subparsers.add_parser('poly', parents=[common, instance, pair],
                                            help='Determinant polynomial of the sum matrix')
        poly_parser.add_argument('--mod', type=int, default=0, help='Reduce coefficients modulo this characteristic')

        verify_parser = subparsers.add_parser('verify', parents=[common],
                                              help='Check the determinant identities or a saved witness')
        verify_parser.add_argument('action', choices=['cauchy-binet', 'char2', 'witness'])
        verify_parser.add_argument('--trials', type=int, default=None, help='Random instances per identity')
        verify_parser.add_argument('--witness-file', type=str, default=None, help='Witness JSON to re-verify')

        sweep_parser = subparsers.add_parser('sweep', parents=[common], help='Run acceptance suites')
        sweep_parser.add_argument('--suite', choices=SUITES + ('all',), default='all')
        sweep_parser.add_argument('--max-m', type=int, default=None, help='Bound on the group order')
        sweep_parser.add_argument('--max-k', type=int, default=None, help='Bound on the subset size')
        sweep_parser.add_argument('--instances', type=int, default=None, help='Random instances per suite')

        subparsers.add_parser('status', help='Summary of saved runs')

        return parser

    # Helpers

    def _configure(self, args) -> RunConfig:
        """Merge settings file and command line into a validated RunConfig"""
        self.settings = load_config(args.config)
        budgets = dataclasses.replace(self.settings.budgets)
        if getattr(args, 'max_perm_k', None) is not None:
            budgets.max_permutation_k = args.max_perm_k
        if getattr(args, 'max_subsets', None) is not None:
            budgets.max_subsets = args.max_subsets
        seed = getattr(args, 'seed', None)
        config = RunConfig(
            group=getattr(args, 'group', None),
            field=getattr(args, 'field', None),
            set_a=getattr(args, 'set_a', None),
            set_b=getattr(args, 'set_b', None),
            chars_x=getattr(args, 'chars_x', None),
            chars_psi=getattr(args, 'chars_psi', None),
            seed=self.settings.sweeps.seed if seed is None else seed,
            budgets=budgets,
            output_format=getattr(args, 'output_format', 'text'),
        )
        return config.validate()

    def _output(self, args) -> OutputManager:
        if self.output_manager is None:
            base = args.output_dir or self.settings.output.base_directory
            self.output_manager = OutputManager(base, self.settings.output.include_timestamps)
        return self.output_manager

    def _run_name(self, args, default: str) -> str:
        return args.run_name or default

    def _instance(self, config: RunConfig):
        spec = parse_group_spec(config.group)
        ctx = build_field(config.field, spec.exponent)
        return spec, ctx

    def _pair(self, config: RunConfig, spec: GroupSpec):
        return parse_elements(spec, config.set_a), parse_elements(spec, config.set_b)

    def _emit(self, config: RunConfig, data: Dict[str, Any], text_lines: List[str]) -> None:
        if config.output_format == 'json':
            print(json.dumps(data, indent=2, sort_keys=True))
        elif config.output_format == 'csv':
            raise ConfigurationError("csv output is available for chartable, verify and sweep only")
        else:
            for line in text_lines:
                print(line)

    def _save_witness(self, args, witness: Dict[str, Any], default_name: str) -> None:
        if args.save:
            path = self._output(args).save_witness(witness, self._run_name(args, default_name))
            logger.info("witness saved to %s", path)

    @staticmethod
    def _default_name(command: str, spec: GroupSpec) -> str:
        return f"{command}_z" + "x".join(str(n) for n in spec.moduli)

    # Commands

    def group_info(self, args, config: RunConfig) -> int:
        spec = parse_group_spec(config.group)
        elements = enumerate_elements(spec)
        data = {
            "group": format_group_spec(spec),
            "order": spec.order,
            "exponent": spec.exponent,
            "elements": [list(g.coords) for g in elements],
        }
        self._emit(config, data, [
            f"order {spec.order}, exponent {spec.exponent}",
            f"elements {format_elements(elements)}",
        ])
        return EXIT_OK

    def field_build(self, args, config: RunConfig) -> int:
        spec, ctx = self._instance(config)
        info = {"group": format_group_spec(spec), "field": ctx.name, **ctx.describe()}
        lines = [f"field {ctx.name}", f"zeta {format_elem(ctx.zeta)}", f"d {ctx.degree}"]
        if "q" in info:
            lines += [f"q {info['q']}", f"modulus {info['modulus']}"]
        else:
            lines.append(f"phi {info['phi']}")
        self._emit(config, info, lines)
        return EXIT_OK

    def chartable(self, args, config: RunConfig) -> int:
        spec, ctx = self._instance(config)
        table = character_table(ctx, spec)
        det = determinant(ctx, table)
        nonzero = not det.is_zero()
        if config.output_format == 'csv':
            frame = pd.DataFrame([[format_elem(e) for e in row] for row in table.entries],
                                 columns=[format_element(g) for g in enumerate_elements(spec)])
            frame.to_csv(sys.stdout, index=False)
        else:
            data = {
                "group": format_group_spec(spec),
                "field": ctx.name,
                "table": [[format_elem(e) for e in row] for row in table.entries],
                "determinant": format_elem(det),
                "nonzero": nonzero,
            }
            self._emit(config, data, [str(table), f"determinant {format_elem(det)}",
                                      "nonzero" if nonzero else "VIOLATION: determinant is zero"])
        return EXIT_OK if nonzero else EXIT_VIOLATION

    def theorem1(self, args, config: RunConfig) -> int:
        spec, ctx = self._instance(config)
        A, B = self._pair(config, spec)
        chars = theorem1_characters(ctx, spec, A, B)
        if chars is None:
            self._emit(config, {"violation": "no common basis", "set_a": config.set_a, "set_b": config.set_b},
                       [f"VIOLATION: no common character basis for A={config.set_a} B={config.set_b} in {ctx.name}"])
            return EXIT_VIOLATION
        witness = witness_to_json(ctx, spec, A, B, chars)
        verified = verify_theorem1_witness(ctx, spec, A, B, chars)
        self._emit(config, {**witness, "verified": verified}, [
            "witness {" + ",".join(str(u) for u in chars) + "}",
            f"detA {witness['detA']}",
            f"detB {witness['detB']}",
            f"verified {str(verified).lower()}",
        ])
        self._save_witness(args, witness, self._default_name("theorem1", spec))
        return EXIT_OK if verified else EXIT_VIOLATION

    def theorem2(self, args, config: RunConfig) -> int:
        spec, ctx = self._instance(config)
        X, Psi = parse_characters(spec, config.chars_x), parse_characters(spec, config.chars_psi)
        elems = dual_witness(ctx, spec, X, Psi)
        if elems is None:
            self._emit(config, {"violation": "no common element basis", "chars_x": config.chars_x,
                                "chars_psi": config.chars_psi},
                       [f"VIOLATION: no element witness for X={config.chars_x} Psi={config.chars_psi}"])
            return EXIT_VIOLATION
        witness = theorem2_witness_to_json(ctx, spec, X, Psi, elems)
        verified = verify_theorem2_witness(ctx, spec, X, Psi, elems)
        self._emit(config, {**witness, "verified": verified}, [
            "witness {" + format_elements(elems).replace(";", ",") + "}",
            f"detX {witness['detX']}",
            f"detPsi {witness['detPsi']}",
            f"verified {str(verified).lower()}",
        ])
        self._save_witness(args, witness, self._default_name("theorem2", spec))
        return EXIT_OK if verified else EXIT_VIOLATION

    def lemma4(self, args, config: RunConfig) -> int:
        spec, ctx = self._instance(config)
        A, B = self._pair(config, spec)
        pi = lemma4_permutation(spec, A, B)
        signature = multiset_signature(spec, A, B, pi)
        attained = count_attaining(spec, A, B, signature, config.budgets.max_permutation_k)
        phi = lemma4_indicator_phi(ctx, spec, A, B, config.budgets.max_specialization_attempts, config.seed)
        det = determinant(ctx, sum_matrix(ctx, spec, A, B, phi))
        witness = permutation_witness_to_json("lemma4", spec, A, B, pi)
        data = {**witness, "signature": list(signature), "count_attaining": attained, "unique": attained == 1,
                "field": ctx.name, "specialized_determinant": format_elem(det)}
        self._emit(config, data, [
            f"pi {pi}",
            "signature [" + ",".join(str(i) for i in signature) + "]",
            f"count_attaining {attained}",
            "unique" if attained == 1 else f"VIOLATION: signature attained by {attained} permutations",
            f"det L at phi {format_elem(det)}",
        ])
        self._save_witness(args, witness, self._default_name("lemma4", spec))
        return EXIT_OK if attained == 1 else EXIT_VIOLATION

    def snevily(self, args, config: RunConfig) -> int:
        spec = parse_group_spec(config.group)
        A, B = self._pair(config, spec)
        sigma = find_snevily_permutation(spec, A, B)
        if sigma is None:
            self._emit(config, {"kind": "snevily", "group": format_group_spec(spec), "permutation": None},
                       ["none"])
            if spec.order % 2:
                logger.error("odd-order group %s has no distinct-sum permutation for A=%s B=%s",
                             spec, config.set_a, config.set_b)
                return EXIT_VIOLATION
            return EXIT_OK
        witness = permutation_witness_to_json("snevily", spec, A, B, sigma)
        self._emit(config, witness, [f"pi {sigma}", "sums " + ";".join(
            "(" + ",".join(str(c) for c in s) + ")" for s in witness["sums"])])
        self._save_witness(args, witness, self._default_name("snevily", spec))
        return EXIT_OK

    def poly(self, args, config: RunConfig) -> int:
        spec = parse_group_spec(config.group)
        A, B = self._pair(config, spec)
        polynomial = reduce_mod_char(snevily_polynomial(spec, A, B, config.budgets.max_permutation_k), args.mod)
        data = {"group": format_group_spec(spec), "k": polynomial.k, "mod": args.mod,
                "terms": polynomial.to_json()}
        self._emit(config, data, [f"{signature} {c}" for signature, c in polynomial.to_json().items()] or ["0"])
        return EXIT_OK

    def _runner(self, config: RunConfig) -> SweepRunner:
        sweeps = dataclasses.replace(self.settings.sweeps, seed=config.seed)
        return SweepRunner(sweeps, config.budgets)

    def _emit_reports(self, args, config: RunConfig, reports: List[SweepReport]) -> int:
        if config.output_format == 'json':
            print(json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True))
        elif config.output_format == 'csv':
            frames = [r.to_frame().assign(suite=r.suite) for r in reports]
            pd.concat(frames, ignore_index=True).to_csv(sys.stdout, index=False)
        else:
            for report in reports:
                status = "PASS" if report.passed else "FAIL"
                print(f"{status} {report.suite}: {report.checked} checks, {report.violation_count} violations")
                for violation in report.violations:
                    print("  VIOLATION " + json.dumps(violation, sort_keys=True))
        if args.save:
            manager = self._output(args)
            for report in reports:
                name = self._run_name(args, report.suite)
                manager.save_sweep_report(report.to_dict(), name)
                manager.save_sweep_metrics(report.to_frame(), name)
        return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION

    def verify(self, args, config: RunConfig) -> int:
        if args.action == 'witness':
            return self.verify_witness(args, config)
        report = self._runner(config).identities_suite(trials=args.trials, checks=(args.action,))
        return self._emit_reports(args, config, [report])

    def verify_witness(self, args, config: RunConfig) -> int:
        if not args.witness_file:
            raise ConfigurationError("verify witness needs --witness-file")
        try:
            with open(args.witness_file) as f:
                data = json.load(f)
        except OSError as e:
            raise ConfigurationError(f"cannot read {args.witness_file}: {e}") from e
        except json.JSONDecodeError as e:
            raise ParseError(f"{args.witness_file} is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise ParseError("witness JSON must be an object")
        if data.get("kind", "theorem1") in WITNESS_KINDS:
            verified = verify_witness_json(data)
        else:
            verified = verify_permutation_witness_json(data, config.budgets.max_permutation_k)
        self._emit(config, {"witness_file": args.witness_file, "kind": data.get("kind", "theorem1"),
                            "verified": verified},
                   [f"verified {str(verified).lower()}"])
        return EXIT_OK if verified else EXIT_VIOLATION

    def sweep(self, args, config: RunConfig) -> int:
        runner = self._runner(config)
        suites = SUITES if args.suite == 'all' else (args.suite,)
        reports = [runner.run(suite, **self._sweep_overrides(suite, args)) for suite in suites]
        return self._emit_reports(args, config, reports)

    @staticmethod
    def _sweep_overrides(suite: str, args) -> Dict[str, Any]:
        """Map --max-m / --max-k / --instances onto the bounds each suite understands"""
        overrides: Dict[str, Any] = {}
        if suite == 'characters' and args.max_k is not None and args.suite == 'characters':
            raise ConfigurationError("the characters suite has no subset size; drop --max-k")
        if suite != 'theorem3':
            overrides['max_m'] = args.max_m
        if suite != 'characters':
            overrides['max_k'] = args.max_k
        if suite == 'theorem3' and args.max_m is not None:
            overrides['orders'] = tuple(o for o in THEOREM3_ORDERS if o <= args.max_m) or (3,)
        if suite in ('theorem1', 'theorem3'):
            overrides['random_instances'] = args.instances
        elif suite == 'oracle':
            overrides['instances'] = args.instances
        elif suite in ('characters', 'identities', 'coherence'):
            overrides['trials'] = args.instances
        return overrides

    def status(self, args, config: RunConfig) -> int:
        summary = self._output(args).get_output_summary()
        print(f"Base directory: {summary['base_directory']}")
        print(f"Total runs: {summary['total_runs']}")
        for category, count in summary['output_directories'].items():
            print(f"  {category}: {count} files")
        for run in summary['recent_runs']:
            print(f"  - {run}")
        return EXIT_OK

    def run(self, args=None) -> int:
        """Main CLI entry point"""
        parser = self.setup_parser()
        parsed_args = parser.parse_args(args)

        logging.basicConfig(
            level=logging.DEBUG if parsed_args.verbose else logging.WARNING,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )

        if not parsed_args.command:
            parser.print_help()
            return EXIT_USAGE

        handlers = {
            'group': self.group_info,
            'field': self.field_build,
            'chartable': self.chartable,
            'theorem1': self.theorem1,
            'theorem2': self.theorem2,
            'lemma4': self.lemma4,
            'snevily': self.snevily,
            'poly': self.poly,
            'verify': self.verify,
            'sweep': self.sweep,
            'status': self.status,
        }
        try:
            config = self._configure(parsed_args)
            return handlers[parsed_args.command](parsed_args, config)
        except (ParseError, ConfigurationError) as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
        except SnevilyError as e:
            logger.error("%s: %s", type(e).__name__, e)
            return EXIT_USAGE


def main(argv=None):
    """Entry point for the CLI"""
    cli = SnevilyCLI()
    return cli.run(argv)


if __name__ == '__main__':
    sys.exit(main())
