"""
Model documents.

A model document is a JSON object describing one arithmetic model: the
modulus N, the gauge group G, the 3-cocycle c, local and global data,
gluings, section overrides, cocycle changes and data isomorphisms (see the
configuration guide for the schema). :func:`parse_config` validates it in
two passes: a structural pass that collects every schema error with its
path, then a build pass that resolves references and checks the
mathematics.

"""
import logging
import os
from collections import OrderedDict

from dwarith.cochains import Cochain, cyclic_cocycle, pullback, require_cocycle
from dwarith.core.errors import DanglingReference, SchemaError
from dwarith.global_theory import CocycleChange, DataIsomorphism, GlobalDatum, GluingDatum
from dwarith.groups import (build_group, builtin_group, hom_from_images, identity_hom, trivial_hom,
                            validate_hom)
from dwarith.local_theory import (InvFunctional, LocalDatum, UnramifiedQuotient, apply_shifts, cyclic_inv,
                                  default_section, klein_inv)
from dwarith.utilities import json_utils
from dwarith.utilities.parsing_utils import parse_call

logger = logging.getLogger(__name__)

_TOP_LEVEL = ('modulus', 'gauge_group', 'cocycle', 'locals', 'globals', 'gluings', 'sections',
              'cocycle_changes', 'isomorphisms', 'expect', 'description')


class ModelConfig(object):
    """
    A fully validated model.

    Attributes:
        name (str): Model name, the document's file stem when loaded from disk.
        modulus (int): N.
        gauge_group (FiniteGroup): G.
        cocycle (Cochain): c, a validated 3-cocycle.
        locals (OrderedDict): ``{name: LocalDatum}``.
        globals (OrderedDict): ``{label: GlobalDatum}``.
        gluings (list of GluingDatum): Gluing data.
        overrides (list of tuple): ``(prime, ρ_p, shift)`` section overrides.
        cocycle_changes (list of CocycleChange): Changes ``c -> c + db``.
        isomorphisms (list of DataIsomorphism): Data isomorphisms.
        expect (dict): Expected outcomes, e.g. ``{"validate": "reciprocity_violation"}``.

    """

    def __init__(self, name, modulus, gauge_group, cocycle, locals_, globals_, gluings, overrides,
                 cocycle_changes, isomorphisms, expect, description=None):
        self.name = name
        self.modulus = modulus
        self.gauge_group = gauge_group
        self.cocycle = cocycle
        self.locals = locals_
        self.globals = globals_
        self.gluings = gluings
        self.overrides = overrides
        self.cocycle_changes = cocycle_changes
        self.isomorphisms = isomorphisms
        self.expect = expect
        self.description = description

    def __repr__(self):
        return 'ModelConfig({}, N={}, G={})'.format(self.name, self.modulus, self.gauge_group.label)

    @property
    def expected_error(self):
        """Error code the model is expected to raise on validation, if any."""
        value = self.expect.get('validate', 'ok')
        return None if value == 'ok' else value

    def section(self, data, label='default'):
        """Default section over ``data`` with the applicable overrides."""
        section = default_section(data, self.gauge_group, self.cocycle, label)
        names = {d.name for d in data}
        shifts = [s for s in self.overrides if s[0] in names]
        if shifts:
            section = apply_shifts(section, shifts, label='configured')
        return section

    def closed_gluings(self):
        return [gl for gl in self.gluings if not gl.inner.attachments]

    def to_json(self):
        return {'name': self.name,
                'modulus': self.modulus,
                'gauge_group': self.gauge_group.to_json(),
                'cocycle': self.cocycle.to_entries(),
                'locals': [d.to_json() for d in self.locals.values()],
                'globals': [gd.to_json() for gd in self.globals.values()],
                'gluings': [gl.to_json() for gl in self.gluings],
                'cocycle_changes': [c.label for c in self.cocycle_changes],
                'isomorphisms': [i.label for i in self.isomorphisms]}


class _Errors(object):

    def __init__(self):
        self.items = []

    def add(self, path, message):
        self.items.append((path, message))

    def require(self, obj, key, path, types):
        if not isinstance(obj, dict) or key not in obj:
            self.add('{}.{}'.format(path, key), 'missing required key')
            return False
        if not isinstance(obj[key], types):
            self.add('{}.{}'.format(path, key), 'expected {}, got {}'.format(
                _type_names(types), type(obj[key]).__name__))
            return False
        return True

    def raise_if_any(self):
        if self.items:
            logger.error('Model document has %d schema errors', len(self.items))
            raise SchemaError(self.items)


def _type_names(types):
    if isinstance(types, tuple):
        return ' or '.join(t.__name__ for t in types)
    return types.__name__


def _check_structure(doc):
    errors = _Errors()
    if not isinstance(doc, dict):
        errors.add('$', 'model document must be a JSON object')
        errors.raise_if_any()
    for key in doc:
        if key not in _TOP_LEVEL:
            errors.add('$.{}'.format(key), 'unknown key')
    if errors.require(doc, 'modulus', '$', int) and doc['modulus'] < 2:
        errors.add('$.modulus', 'must be at least 2')
    errors.require(doc, 'gauge_group', '$', (str, dict))
    if 'cocycle' in doc and not isinstance(doc['cocycle'], (str, dict)):
        errors.add('$.cocycle', 'expected str or dict')

    for i, loc in enumerate(doc.get('locals', [])):
        path = '$.locals[{}]'.format(i)
        errors.require(loc, 'name', path, str)
        errors.require(loc, 'group', path, (str, dict))
        errors.require(loc, 'inv', path, (str, list))
        if isinstance(loc, dict) and loc.get('orientation', 1) not in (1, -1):
            errors.add(path + '.orientation', 'must be 1 or -1')
        if isinstance(loc, dict) and 'unramified' in loc:
            errors.require(loc['unramified'], 'group', path + '.unramified', (str, dict))
            errors.require(loc['unramified'], 'v_map', path + '.unramified', (str, list, dict))

    for i, gd in enumerate(doc.get('globals', [])):
        path = '$.globals[{}]'.format(i)
        errors.require(gd, 'label', path, str)
        errors.require(gd, 'group', path, (str, dict))
        if errors.require(gd, 'attachments', path, list):
            for j, att in enumerate(gd['attachments']):
                errors.require(att, 'local', '{}.attachments[{}]'.format(path, j), str)
                errors.require(att, 'iota_map', '{}.attachments[{}]'.format(path, j), (str, list, dict))

    for i, gl in enumerate(doc.get('gluings', [])):
        path = '$.gluings[{}]'.format(i)
        for key in ('label', 'outer', 'inner'):
            errors.require(gl, key, path, str)
        errors.require(gl, 'eta_map', path, (str, list, dict))
        if isinstance(gl, dict) and not isinstance(gl.get('u_maps', {}), dict):
            errors.add(path + '.u_maps', 'expected dict')

    for i, sec in enumerate(doc.get('sections', [])):
        path = '$.sections[{}]'.format(i)
        errors.require(sec, 'local', path, str)
        errors.require(sec, 'rho', path, list)
        errors.require(sec, 'shift', path, int)

    for i, change in enumerate(doc.get('cocycle_changes', [])):
        path = '$.cocycle_changes[{}]'.format(i)
        errors.require(change, 'label', path, str)
        errors.require(change, 'b', path, (dict, list))

    for i, iso in enumerate(doc.get('isomorphisms', [])):
        path = '$.isomorphisms[{}]'.format(i)
        for key in ('label', 'source', 'target'):
            errors.require(iso, key, path, str)
        errors.require(iso, 'global_map', path, (str, list, dict))
        errors.require(iso, 'local_maps', path, list)

    if not isinstance(doc.get('expect', {}), dict):
        errors.add('$.expect', 'expected dict')
    errors.raise_if_any()


def parse_group(spec, path='$'):
    """
    Build a group from ``"cyclic(4)"``-style text or from
    ``{"table": [[...]], "generators": [...], "label": ...}``.
    """
    try:
        if isinstance(spec, str):
            return builtin_group(spec)
        if 'table' not in spec or 'generators' not in spec:
            raise ValueError('group objects need "table" and "generators"')
        return build_group(spec['table'], spec['generators'], spec.get('label'), spec.get('names'))
    except (ValueError, TypeError) as e:
        raise SchemaError([(path, str(e))])


def _element(group, value, path):
    if isinstance(value, str):
        try:
            return group.element(value)
        except KeyError as e:
            raise SchemaError([(path, str(e))])
    return int(value)


def parse_map(spec, source, target, path='$'):
    """
    Build a hom ``source -> target`` from a full image list,
    ``{"generators": [...]}`` or one of the builtin maps ``identity``,
    ``trivial``, ``reduce``, ``project(i)``, ``multiply(k)``.

    Raises:
        NotAHomomorphism: The map does not respect multiplication.

    """
    if isinstance(spec, list):
        return validate_hom(source, target, [_element(target, v, path) for v in spec])
    if isinstance(spec, dict):
        if 'generators' not in spec:
            raise SchemaError([(path, 'map objects need "generators"')])
        images = [_element(target, v, path) for v in spec['generators']]
        return hom_from_images(source, target, images)
    try:
        name, args = parse_call(spec)
    except ValueError as e:
        raise SchemaError([(path, str(e))])
    if name == 'identity':
        if source != target:
            raise SchemaError([(path, 'identity needs equal groups, got {} and {}'.format(
                source.label, target.label))])
        return identity_hom(source)
    if name == 'trivial':
        return trivial_hom(source, target)
    if name == 'reduce':
        return hom_from_images(source, target, list(target.generators))
    if name == 'project' and len(args) == 1:
        images = [target.generators[0] if j == args[0] else target.identity
                  for j in range(len(source.generators))]
        return hom_from_images(source, target, images)
    if name == 'multiply' and len(args) == 1:
        images = [target.multiply(*([g] * (args[0] % target.order))) for g in target.generators]
        return hom_from_images(source, target, images)
    raise SchemaError([(path, 'unknown map {!r}'.format(spec))])


def parse_cochain(spec, group, degree, modulus, path='$'):
    """``"zero"``, ``{"entries": [[[args], value], ...]}`` or a bare entry list."""
    if spec == 'zero':
        return Cochain.zero(group, degree, modulus)
    entries = spec.get('entries') if isinstance(spec, dict) else spec
    if not isinstance(entries, list):
        raise SchemaError([(path, 'expected "zero" or an entry list')])
    try:
        return Cochain.from_entries(group, degree, modulus, entries)
    except (ValueError, IndexError, TypeError) as e:
        raise SchemaError([(path, str(e))])


def _parse_cocycle(spec, group, modulus):
    if isinstance(spec, dict) and 'builtin' in spec:
        if spec['builtin'] != 'cyclic':
            raise SchemaError([('$.cocycle.builtin', 'unknown builtin cocycle {!r}'.format(spec['builtin']))])
        k = int(spec.get('k', 1))
        via = spec.get('via')
        if via is None:
            cocycle = cyclic_cocycle(group, modulus, k)
        else:
            # c_k on a cyclic quotient, pulled back to G.
            if not isinstance(via, dict) or 'group' not in via or 'map' not in via:
                raise SchemaError([('$.cocycle.via', 'expected {"group": ..., "map": ...}')])
            quotient = parse_group(via['group'], '$.cocycle.via.group')
            hom = parse_map(via['map'], group, quotient, '$.cocycle.via.map')
            cocycle = pullback(cyclic_cocycle(quotient, modulus, k), hom)
    else:
        cocycle = parse_cochain(spec, group, 3, modulus, '$.cocycle')
    return require_cocycle(cocycle)


def _parse_local(spec, modulus, path):
    group = parse_group(spec['group'], path + '.group')
    inv_spec = spec['inv']
    witness = None
    try:
        if inv_spec == 'klein':
            inv, witness = klein_inv(group, modulus)
        elif inv_spec == 'cyclic':
            inv, witness = cyclic_inv(group, modulus)
        elif isinstance(inv_spec, list):
            inv = InvFunctional(group, modulus, {(int(g), int(h)): int(v) for g, h, v in inv_spec})
        else:
            raise ValueError('unknown inv functional {!r}'.format(inv_spec))
    except (ValueError, TypeError, KeyError) as e:
        raise SchemaError([(path + '.inv', str(e))])
    unramified = None
    if 'unramified' in spec:
        quotient = parse_group(spec['unramified']['group'], path + '.unramified.group')
        v_map = parse_map(spec['unramified']['v_map'], group, quotient, path + '.unramified.v_map')
        unramified = UnramifiedQuotient(quotient, v_map)
    return LocalDatum(spec['name'], group, inv, spec.get('orientation', 1), witness=witness,
                      unramified=unramified)


def _lookup(table, key, kind, path):
    try:
        return table[key]
    except KeyError:
        logger.error('%s refers to undeclared %s %r', path, kind, key)
        raise DanglingReference('{} refers to undeclared {} {!r}.'.format(path, kind, key), path=path, name=key)


def parse_config(document, name='model'):
    """
    Validate a model document.

    Args:
        document (dict): Parsed JSON.
        name (str): Model name for reports.

    Returns:
        ModelConfig

    Raises:
        SchemaError: Structural problems, all listed with their paths.
        DanglingReference: A name or label does not resolve.
        NotACocycle: ``dc != 0``; the violating tuple is in the details.

    """
    _check_structure(document)
    modulus = document['modulus']
    gauge_group = parse_group(document['gauge_group'], '$.gauge_group')
    cocycle = _parse_cocycle(document.get('cocycle', 'zero'), gauge_group, modulus)

    locals_ = OrderedDict()
    for i, spec in enumerate(document.get('locals', [])):
        path = '$.locals[{}]'.format(i)
        if spec['name'] in locals_:
            raise SchemaError([(path + '.name', 'duplicate local name {!r}'.format(spec['name']))])
        locals_[spec['name']] = _parse_local(spec, modulus, path)

    globals_ = OrderedDict()
    for i, spec in enumerate(document.get('globals', [])):
        path = '$.globals[{}]'.format(i)
        group = parse_group(spec['group'], path + '.group')
        attachments = []
        for j, att in enumerate(spec['attachments']):
            att_path = '{}.attachments[{}]'.format(path, j)
            local = _lookup(locals_, att['local'], 'local', att_path + '.local')
            attachments.append((local, parse_map(att['iota_map'], local.group, group, att_path + '.iota_map')))
        globals_[spec['label']] = GlobalDatum(group, attachments, spec['label'], modulus=modulus)

    gluings = []
    for i, spec in enumerate(document.get('gluings', [])):
        path = '$.gluings[{}]'.format(i)
        outer = _lookup(globals_, spec['outer'], 'global', path + '.outer')
        inner = _lookup(globals_, spec['inner'], 'global', path + '.inner')
        eta = parse_map(spec['eta_map'], outer.group, inner.group, path + '.eta_map')
        u_maps = {}
        for prime, map_spec in sorted(spec.get('u_maps', {}).items()):
            local = _lookup(locals_, prime, 'local', '{}.u_maps.{}'.format(path, prime))
            if local.unramified is None:
                raise SchemaError([('{}.u_maps.{}'.format(path, prime), 'local has no unramified quotient')])
            u_maps[prime] = parse_map(map_spec, local.unramified.group, inner.group,
                                      '{}.u_maps.{}'.format(path, prime))
        gluing = GluingDatum(outer, inner, eta, u_maps, spec['label'])
        split = spec.get('split')
        if split is not None and (split.get('S1', []) != gluing.s1_names or split.get('S2', []) != gluing.s2_names):
            raise SchemaError([(path + '.split', 'split {} does not match S1 = {}, S2 = {}'.format(
                split, gluing.s1_names, gluing.s2_names))])
        gluings.append(gluing)

    overrides = []
    for i, spec in enumerate(document.get('sections', [])):
        path = '$.sections[{}]'.format(i)
        local = _lookup(locals_, spec['local'], 'local', path + '.local')
        images = [_element(gauge_group, v, path + '.rho') for v in spec['rho']]
        overrides.append((local.name, hom_from_images(local.group, gauge_group, images), spec['shift']))

    changes = []
    for i, spec in enumerate(document.get('cocycle_changes', [])):
        path = '$.cocycle_changes[{}]'.format(i)
        b = parse_cochain(spec['b'], gauge_group, 2, modulus, path + '.b')
        new_cocycle = None
        if 'new_cocycle' in spec:
            new_cocycle = parse_cochain(spec['new_cocycle'], gauge_group, 3, modulus, path + '.new_cocycle')
        changes.append(CocycleChange(cocycle, b, spec['label'], new_cocycle=new_cocycle))

    isomorphisms = []
    for i, spec in enumerate(document.get('isomorphisms', [])):
        path = '$.isomorphisms[{}]'.format(i)
        source = _lookup(globals_, spec['source'], 'global', path + '.source')
        target = _lookup(globals_, spec['target'], 'global', path + '.target')
        if len(spec['local_maps']) != len(target.attachments):
            raise SchemaError([(path + '.local_maps', 'expected {} maps'.format(len(target.attachments)))])
        global_map = parse_map(spec['global_map'], source.group, target.group, path + '.global_map')
        local_maps = [parse_map(m, a_src.local.group, a_tgt.local.group, '{}.local_maps[{}]'.format(path, j))
                      for j, (m, a_src, a_tgt) in enumerate(zip(spec['local_maps'], source.attachments,
                                                                 target.attachments))]
        isomorphisms.append(DataIsomorphism(source, target, global_map, local_maps, spec['label']))

    logger.info('Parsed model %s: N=%s, G=%s, %d locals, %d globals, %d gluings', name, modulus,
                gauge_group.label, len(locals_), len(globals_), len(gluings))
    return ModelConfig(name, modulus, gauge_group, cocycle, locals_, globals_, gluings, overrides, changes,
                       isomorphisms, document.get('expect', {}), document.get('description'))


def load_config(path):
    """Read and parse a model document from disk."""
    try:
        document = json_utils.read_json_file(path)
    except ValueError as e:
        raise SchemaError([('$', 'invalid JSON: {}'.format(e))])
    except (IOError, OSError) as e:
        raise SchemaError([('$', 'cannot read {}: {}'.format(path, e.strerror or e))])
    name = os.path.splitext(os.path.basename(path))[0]
    return parse_config(document, name)


def shipped_model_paths():
    """Paths of the example models installed with the package, sorted by name."""
    data_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')
    return sorted(os.path.join(data_dir, f) for f in os.listdir(data_dir) if f.endswith('.json'))
