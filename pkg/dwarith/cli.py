"""
Command line interface.

::

    dwarith <command> --config <model.json> [--out <path>] [--format text|structured] [-v]

Exit status is 0 on success, 1 on a model violation, 2 on a schema error
and 3 when an internal invariant fails (including a failing ``suite``).

"""
import argparse
import logging
import sys

from dwarith import CONFIG, add_stderr_logger
from dwarith.core.errors import INTERNAL_FAILURE, MODEL_VIOLATION, DWArithError
from dwarith.global_theory import (check_decomposition, check_global_axioms, check_gluing_axioms, cs_closed,
                                   cs_table, cs_tube, tube_space)
from dwarith.groups import GroupHom, orbits_stabilizers
from dwarith.local_theory import check_local_axioms, default_section, lambda_S, local_homs, perturb_section
from dwarith.models import load_config
from dwarith.quantum import (glue_pair, partition_closed, partition_global, partition_tube, rho_json,
                             theta_space, transport_cocycle, transport_isomorphism, transport_section)
from dwarith.suite import run_suite
from dwarith.utilities import json_utils, logging_utils

import numpy as np

logger = logging.getLogger(__name__)

COMMANDS = ('validate', 'homs', 'lambda', 'cs', 'partition', 'hdim', 'glue', 'transport', 'suite')


def _point_json(x):
    return list(x.key) if isinstance(x, GroupHom) else rho_json(x)


def _orbit_listing(space, group):
    return [{'representative': _point_json(o.representative),
             'members': [_point_json(m) for m in o.members],
             'stabilizer': list(o.stabilizer)}
            for o in orbits_stabilizers(space, group)]


def cmd_validate(model):
    reports = []
    g, c = model.gauge_group, model.cocycle
    for d in model.locals.values():
        reports.append(check_local_axioms(d, g, c))
    for gd in model.globals.values():
        reports.append(check_global_axioms(gd, g, c))
    for gl in model.gluings:
        reports.append(check_gluing_axioms(gl, g, c))
    return {'reports': [r.to_json() for r in reports], 'ok': all(r.ok for r in reports)}


def cmd_homs(model):
    g = model.gauge_group
    result = {'locals': {}, 'globals': {}, 'unramified': {}}
    for d in model.locals.values():
        space = local_homs(d, g)
        result['locals'][d.name] = {'count': len(space), 'orbits': _orbit_listing(space, g)}
        if d.unramified is not None:
            tilde = [r[0] for r in tube_space([d], g)]
            result['unramified'][d.name] = {'count': len(tilde), 'orbits': _orbit_listing(tilde, g)}
    for gd in model.globals.values():
        space = gd.homs(g)
        result['globals'][gd.label] = {'count': len(space), 'orbits': _orbit_listing(space, g)}
    return result


def cmd_lambda(model):
    result = {}
    g = model.gauge_group
    for gd in model.globals.values():
        x = model.section(gd.data)
        result[gd.label] = {'section': x.label,
                            'primes': x.names,
                            'table': [{'rho_S': rho_json(rho_S),
                                       'values': [lambda_S(x, h, rho_S) for h in g.elements]}
                                      for rho_S in x.space()]}
    return result


def cmd_cs(model):
    result = {'global': {}, 'tube': {}, 'closed': {}}
    for gd in model.globals.values():
        x = model.section(gd.data)
        result['global'][gd.label] = [{'rho': list(rho.key), 'cs': v} for rho, v in cs_table(gd, x).items()]
    for gl in model.gluings:
        data = gl.s2_data
        x = model.section(data)
        result['tube'][gl.label] = [{'rho_tilde': rho_json(r), 'cs': cs_tube(data, x, r)}
                                    for r in tube_space(data, model.gauge_group)]
        if not gl.inner.attachments:
            x_outer = model.section(gl.outer.data)
            result['closed'][gl.label] = [{'rho': list(r.key), 'cs': cs_closed(gl, x_outer, r)}
                                          for r in gl.inner.homs(model.gauge_group)]
    return result


def cmd_partition(model):
    result = {'global': {}, 'tube': {}, 'closed': {}}
    for gd in model.globals.values():
        result['global'][gd.label] = partition_global(gd, model.section(gd.data)).to_json()
    for gl in model.gluings:
        x = model.section(gl.s2_data)
        result['tube'][gl.label] = {o: partition_tube(gl.s2_data, x, o).to_json() for o in ('normal', 'reversed')}
        if not gl.inner.attachments:
            result['closed'][gl.label] = partition_closed(gl, model.section(gl.outer.data)).to_json()
    return result


def cmd_hdim(model):
    return {gd.label: theta_space(model.section(gd.data)).to_json() for gd in model.globals.values()}


def cmd_glue(model):
    result = {}
    ok = True
    for gl in model.gluings:
        x = model.section(gl.outer.data)
        glued = glue_pair(partition_global(gl.outer, x),
                          partition_tube(gl.s2_data, x.restrict(gl.s2_names), 'reversed'))
        inner = partition_global(gl.inner, x.restrict(gl.s1_names))
        decomposition = check_decomposition(gl, x)
        equal = glued == inner
        ok = ok and equal and decomposition.ok
        result[gl.label] = {'glued': glued.to_json(), 'inner': inner.to_json(), 'equal': equal,
                            'decomposition': decomposition.to_json()}
    return {'gluings': result, 'ok': ok}


def cmd_transport(model):
    result = {'sections': {}, 'cocycle_changes': {}, 'isomorphisms': {}}
    rng = np.random.default_rng(CONFIG['sampling']['seed'])
    ok = True
    for gd in model.globals.values():
        x = model.section(gd.data)
        x_new = perturb_section(x, rng)
        moved = transport_section(partition_global(gd, x), x_new)
        equal = moved == partition_global(gd, x_new)
        ok = ok and equal
        result['sections'][gd.label] = {'transported': moved.to_json(), 'equal': equal}
    for change in model.cocycle_changes:
        entry = {}
        for gd in model.globals.values():
            x = model.section(gd.data)
            x_new = default_section(gd.data, model.gauge_group, change.new_cocycle, 'fresh')
            moved = transport_cocycle(partition_global(gd, x), change, x_new)
            equal = moved == partition_global(gd, x_new)
            ok = ok and equal
            entry[gd.label] = {'transported': moved.to_json(), 'equal': equal}
        result['cocycle_changes'][change.label] = entry
    for iso in model.isomorphisms:
        x = model.section(iso.target.data)
        x_src = iso.transport_section(x)
        moved = transport_isomorphism(partition_global(iso.target, x), iso, x_src)
        equal = moved == partition_global(iso.source, x_src)
        ok = ok and equal
        result['isomorphisms'][iso.label] = {'transported': moved.to_json(), 'equal': equal}
    result['ok'] = ok
    return result


_HANDLERS = {'validate': cmd_validate, 'homs': cmd_homs, 'lambda': cmd_lambda, 'cs': cmd_cs,
             'partition': cmd_partition, 'hdim': cmd_hdim, 'glue': cmd_glue, 'transport': cmd_transport}


@logging_utils.log_entrance_exit
def run(command, model):
    """
    Run one command on a parsed model.

    Args:
        command (str): One of :data:`COMMANDS` except ``suite``.
        model (ModelConfig): The model.

    Returns:
        dict: Structured result; ``ok`` is False when a check failed.

    """
    try:
        handler = _HANDLERS[command]
    except KeyError:
        raise ValueError('Unknown command {!r}.'.format(command))
    result = handler(model)
    result.setdefault('ok', True)
    return {'command': command, 'model': model.name, 'result': result, 'ok': result['ok']}


def render_text(value, indent=0):
    """Deterministic indented text rendering of a structured result."""
    pad = '  ' * indent
    lines = []
    if isinstance(value, dict):
        for key in sorted(value, key=str):
            item = value[key]
            if isinstance(item, (dict, list)) and item:
                lines.append('{}{}:'.format(pad, key))
                lines.append(render_text(item, indent + 1))
            else:
                lines.append('{}{}: {}'.format(pad, key, _scalar(item)))
    elif isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            lines.append('{}{}'.format(pad, _scalar(value)))
        else:
            for item in value:
                lines.append('{}-'.format(pad))
                lines.append(render_text(item, indent + 1))
    else:
        lines.append('{}{}'.format(pad, _scalar(value)))
    return '\n'.join(line for line in lines if line)


def _scalar(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if value is None:
        return 'null'
    if isinstance(value, list):
        return '[' + ', '.join(_scalar(v) for v in value) + ']'
    return str(value)


def _format(document, fmt):
    if fmt == 'text':
        return render_text(document) + '\n'
    return json_utils.canonical_dumps(document, indent=CONFIG['output']['indent'])


def _emit(text, out):
    if out:
        with open(out, 'w') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def build_parser():
    parser = argparse.ArgumentParser(prog='dwarith',
                                     description='Arithmetic Dijkgraaf-Witten invariants of finite models.')
    parser.add_argument('command', choices=COMMANDS, help='Command to run.')
    parser.add_argument('--config', action='append', default=None,
                        help='Model document (JSON). suite accepts several and defaults to the shipped models.')
    parser.add_argument('--out', default=None, help='Write output here instead of stdout.')
    parser.add_argument('--format', choices=('text', 'structured'), default='structured',
                        help='Output format.')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='Log to stderr; repeat for debug output.')
    return parser


def main(argv=None):
    """
    Entry point.

    Returns:
        int: Exit status.

    """
    args = build_parser().parse_args(argv)
    if args.verbose:
        add_stderr_logger(logging.DEBUG if args.verbose > 1 else logging.INFO)

    try:
        if args.command == 'suite':
            reports = run_suite(args.config)
            document = {'command': 'suite', 'ok': all(r.ok for r in reports),
                        'reports': [r.to_json() for r in reports]}
            status = 0 if document['ok'] else INTERNAL_FAILURE
        else:
            if not args.config or len(args.config) != 1:
                build_parser().error('{} needs exactly one --config'.format(args.command))
            document = run(args.command, load_config(args.config[0]))
            status = 0
            if not document['ok']:
                status = MODEL_VIOLATION if args.command == 'validate' else INTERNAL_FAILURE
    except DWArithError as e:
        logger.error('%s failed: %s', args.command, e.message)
        document = {'command': args.command, 'ok': False, 'error': e.to_json()}
        status = e.exit_status

    _emit(_format(document, args.format), args.out)
    return status


if __name__ == '__main__':
    sys.exit(main())
