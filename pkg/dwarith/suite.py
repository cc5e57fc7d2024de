"""
The invariant suite.

Runs every identity the theory promises on a set of models and returns one
:class:`CheckReport <dwarith.core.structure.CheckReport>` per model, plus a
report for the cochain-level homotopy identities. Checks are independent
and run through :class:`SweepMixin <dwarith.core.mixins.SweepMixin>`.

"""
import logging
from collections import namedtuple

import numpy as np

from dwarith import CONFIG
from dwarith.cochains import Cochain, check_homotopy_identities
from dwarith.core.errors import DWArithError
from dwarith.core.mixins import SweepMixin
from dwarith.core.structure import CheckRecord, CheckReport
from dwarith.global_theory import (CocycleChange, check_closed_consistency, check_decomposition,
                                   check_global_axioms, check_gluing_axioms, cs_global, cs_table, cs_tube,
                                   equivariance_defects, lambda_difference, restrict, tube_restrict, tube_space)
from dwarith.groups import act_on_tuple, classical_count, conjugate_hom, cyclic, direct_product
from dwarith.local_theory import check_local_axioms, default_section, delta_sections, lambda_S, perturb_section
from dwarith.models import load_config, shipped_model_paths
from dwarith.quantum import (check_equivariance, classical_value, equivariance_system_dimension, glue_pair,
                             partition_closed, partition_global, partition_tube, tensor_and_dual, theta_space,
                             transport_cocycle, transport_isomorphism, transport_section)
from dwarith.utilities import logging_utils
from dwarith.utilities.data_utils import concatenate_reports

logger = logging.getLogger(__name__)

SuiteMessage = namedtuple('SuiteMessage', ['name', 'model', 'check'])
HomotopyMessage = namedtuple('HomotopyMessage', ['name', 'group', 'modulus', 'degree', 'character', 'exhaustive'])

_MODEL_CHECKS = ('axioms', 'lambda_cocycle', 'section_change', 'equivariance', 'gluing', 'classical_count',
                 'structure', 'cocycle_change', 'isomorphisms')


class InvariantSuite(SweepMixin):
    """
    Verification sweep over models.

    Args:
        models (list of ModelConfig, optional): Models to check; defaults to
            the shipped examples.
        homotopy (bool): Include the homotopy-identity sweep.

    """

    def __init__(self, models=None, homotopy=True):
        if models is None:
            models = [load_config(path) for path in shipped_model_paths()]
        self.models = models
        self.homotopy = homotopy
        self.seed = CONFIG['sampling']['seed']
        self.n_perturbed = CONFIG['sampling']['perturbed_sections']

    def _rng(self, model, *salt):
        return np.random.default_rng([self.seed, sum(ord(ch) for ch in model.name)] + list(salt))

    @logging_utils.log_entrance_exit
    def run(self):
        """
        Run every check.

        Returns:
            list of :class:`CheckReport <dwarith.core.structure.CheckReport>`

        """
        reports = []
        if self.homotopy:
            records = self._process_messages(self._homotopy_worker, self._homotopy_messages())
            reports.append(CheckReport('homotopy', records))

        messages = []
        for model in self.models:
            checks = ('expected',) if model.expected_error else _MODEL_CHECKS
            messages.extend(SuiteMessage('{}:{}'.format(model.name, c), model, c) for c in checks)
        records = self._process_messages(self._model_worker, messages)

        by_model = {}
        for msg, recs in zip(messages, _group_by_message(messages, records)):
            by_model.setdefault(msg.model.name, []).extend(recs)
        for model in self.models:
            reports.append(CheckReport(model.name, by_model.get(model.name, [])))
        return reports

    def summary(self, reports):
        """Single merged report."""
        return concatenate_reports(reports, 'suite')

    def _homotopy_messages(self):
        messages = []
        groups = [cyclic(2), cyclic(3), direct_product(2, 2)]
        for group in groups:
            for modulus in (2, 3):
                for degree in (1, 2):
                    messages.append(HomotopyMessage('homotopy:{}:{}:{}'.format(group.label, modulus, degree),
                                                    group, modulus, degree, None, False))
        sign = (1, 2)  # Z/2 acting on Z/3 by -1
        for degree in (1, 2):
            messages.append(HomotopyMessage('homotopy:cyclic(2):3:{}:chi'.format(degree),
                                            cyclic(2), 3, degree, sign, False))
            messages.append(HomotopyMessage('homotopy:cyclic(2):2:{}:all'.format(degree),
                                            cyclic(2), 2, degree, None, True))
        return messages

    def _homotopy_worker(self, msg):
        rng = np.random.default_rng([self.seed, msg.group.order, msg.modulus, msg.degree])
        report = check_homotopy_identities(msg.group, msg.modulus, msg.degree, rng=rng, character=msg.character,
                                           exhaustive=msg.exhaustive)
        return report.records

    def _model_worker(self, msg):
        records = getattr(self, '_check_' + msg.check)(msg.model)
        return [_prefixed(msg.name, r) for r in records] or [CheckRecord(msg.name, message='nothing to check')]

    def _sections(self, model, data):
        x = model.section(data)
        rng = self._rng(model, len(data))
        return [x] + [perturb_section(x, rng, 'perturbed{}'.format(i)) for i in range(self.n_perturbed)]

    def _check_expected(self, model):
        """A model documented to fail must fail with the documented error."""
        expected = model.expected_error
        seen = []
        for gd in model.globals.values():
            failures = gd.reciprocity_failures()
            if failures:
                seen.append('reciprocity_violation')
                try:
                    cs_table(gd, default_section(gd.data, model.gauge_group, model.cocycle))
                except DWArithError as e:
                    seen.append(e.code)
        ok = expected in seen
        return [CheckRecord('expected_{}'.format(expected), content={'observed': sorted(set(seen))},
                            error=None if ok else 'expected {} but observed {}'.format(expected, seen))]

    def _check_axioms(self, model):
        records = []
        g, c = model.gauge_group, model.cocycle
        for d in model.locals.values():
            records.extend(check_local_axioms(d, g, c).records)
        for gd in model.globals.values():
            records.extend(check_global_axioms(gd, g, c).records)
        for gl in model.gluings:
            records.extend(check_gluing_axioms(gl, g, c).records)
        return records

    def _check_lambda_cocycle(self, model):
        # Every declared prime, attached or not.
        records = []
        group = model.gauge_group
        for d in model.locals.values():
            for x in self._sections(model, [d]):
                bad = []
                for rho_S in x.space():
                    for g in group.elements:
                        moved = act_on_tuple(rho_S, g)
                        lam_g = lambda_S(x, g, rho_S)
                        for h in group.elements:
                            lhs = lambda_S(x, group.multiply(g, h), rho_S)
                            if lhs != (lam_g + lambda_S(x, h, moved)) % x.modulus:
                                bad.append([g, h])
                records.append(CheckRecord('lambda_cocycle[{}:{}]'.format(d.name, x.label),
                                           content={'failures': len(bad)},
                                           error='cocycle law fails at {}'.format(bad[:3]) if bad else None))
        return records

    def _check_section_change(self, model):
        records = []
        group = model.gauge_group
        for gd in model.globals.values():
            sections = self._sections(model, gd.data)
            x = sections[0]
            z = partition_global(gd, x)
            table = cs_table(gd, x)
            for x_new in sections[1:]:
                tag = '[{}:{}]'.format(gd.label, x_new.label)
                lam_bad = [(g, rho_S) for rho_S in x.space() for g in group.elements
                           if (lambda_S(x_new, g, rho_S) - lambda_S(x, g, rho_S)) % x.modulus
                           != (delta_sections(x, x_new, act_on_tuple(rho_S, g))
                               - delta_sections(x, x_new, rho_S)) % x.modulus]
                records.append(CheckRecord('lambda_section_change' + tag,
                                           error='{} failures'.format(len(lam_bad)) if lam_bad else None))
                cs_bad = [rho for rho, value in table.items()
                          if cs_global(gd, x_new, rho) != (value + delta_sections(x, x_new, restrict(gd, rho)))
                          % x.modulus]
                records.append(CheckRecord('cs_section_change' + tag,
                                           error='{} failures'.format(len(cs_bad)) if cs_bad else None))
                same = transport_section(z, x_new) == partition_global(gd, x_new)
                records.append(CheckRecord('partition_section_change' + tag,
                                           error=None if same else 'transported Z differs from recomputed Z'))
            if len(sections) >= 3:
                direct = transport_section(z, sections[2])
                composed = transport_section(transport_section(z, sections[1]), sections[2])
                records.append(CheckRecord('transport_composition[{}]'.format(gd.label),
                                           error=None if direct == composed else 'composition law fails'))
        return records

    def _check_equivariance(self, model):
        records = []
        for gd in model.globals.values():
            x = model.section(gd.data)
            defects = equivariance_defects(gd, x)
            records.append(CheckRecord('cs_equivariance[{}]'.format(gd.label), content={'defects': len(defects)},
                                       error='dCS != res*lambda at {} points'.format(len(defects)) if defects
                                       else None))
            z = partition_global(gd, x)
            bad = check_equivariance(z)
            records.append(CheckRecord('partition_in_quantum_space[{}]'.format(gd.label),
                                       error='{} equivariance defects'.format(len(bad)) if bad else None))
        for gl in model.gluings:
            data = gl.s2_data
            x = model.section(data)
            bad = []
            for rho_tilde in tube_space(data, model.gauge_group):
                value = cs_tube(data, x, rho_tilde)
                res = tube_restrict(data, rho_tilde)
                for g in model.gauge_group.elements:
                    moved = tuple(conjugate_hom(r, g) for r in rho_tilde)
                    if cs_tube(data, x, moved) != (value + lambda_S(x, g, res)) % x.modulus:
                        bad.append(g)
            records.append(CheckRecord('tube_equivariance[{}]'.format(gl.label),
                                       error='{} defects'.format(len(bad)) if bad else None))
            for orientation in ('normal', 'reversed'):
                z = partition_tube(data, x, orientation)
                defects = check_equivariance(z)
                records.append(CheckRecord('tube_in_quantum_space[{}:{}]'.format(gl.label, orientation),
                                           error='{} defects'.format(len(defects)) if defects else None))
        return records

    def _check_gluing(self, model):
        records = []
        for gl in model.gluings:
            x = model.section(gl.outer.data)
            records.extend(check_decomposition(gl, x).records)
            z_outer = partition_global(gl.outer, x)
            z_tube = partition_tube(gl.s2_data, x.restrict(gl.s2_names), 'reversed')
            glued = glue_pair(z_outer, z_tube)
            z_inner = partition_global(gl.inner, x.restrict(gl.s1_names))
            records.append(CheckRecord('gluing_formula[{}]'.format(gl.label),
                                       content={'glued': glued, 'inner': z_inner},
                                       error=None if glued == z_inner else 'glued vector differs from Z of S1'))
            if not gl.inner.attachments:
                closed = partition_closed(gl, x)
                records.append(CheckRecord('closed_partition[{}]'.format(gl.label),
                                           content={'closed': closed, 'glued': glued[()]},
                                           error=None if closed == glued[()] else 'closed value differs'))
        closed = [(gl, model.section(gl.outer.data)) for gl in model.closed_gluings()]
        by_group = {}
        for gl, x in closed:
            by_group.setdefault(gl.inner.group, []).append((gl, x))
        for pairs in by_group.values():
            if len(pairs) > 1:
                records.extend(check_closed_consistency(pairs, model.gauge_group).records)
        return records

    def _check_classical_count(self, model):
        records = []
        for gd in model.globals.values():
            if gd.attachments:
                continue
            x = model.section([])
            value = partition_global(gd, x)[()]
            expected = classical_value(len(gd.homs(model.gauge_group)), model.gauge_group.order, model.modulus)
            records.append(CheckRecord('classical_count[{}]'.format(gd.label),
                                       content={'partition': value, 'count': str(classical_count(
                                           gd.group, model.gauge_group))},
                                       error=None if value == expected else 'Z differs from #Hom/#G'))
        return records

    def _check_structure(self, model):
        records = []
        limit = CONFIG['limits']['max_hom_space']
        for gd in model.globals.values():
            x = model.section(gd.data)
            space = theta_space(x)
            if len(x.space()) <= 64:
                brute = equivariance_system_dimension(x.space(), model.gauge_group,
                                                      lambda g, rho_S: lambda_S(x, g, rho_S), x.modulus)
                records.append(CheckRecord('theta_dimension[{}]'.format(gd.label),
                                           content={'orbits': space.dimension, 'linear_system': brute},
                                           error=None if brute == space.dimension else 'dimension mismatch'))
            if len(gd.attachments) >= 2 and len(x.space()) <= limit:
                x_1, x_2 = x.restrict(x.names[:1]), x.restrict(x.names[1:])
                records.extend(tensor_and_dual(x_1, x_2).records)
        return records

    def _check_cocycle_change(self, model):
        records = []
        group, n = model.gauge_group, model.modulus
        rng = self._rng(model, 99)
        changes = list(model.cocycle_changes)
        changes.append(CocycleChange(model.cocycle, Cochain.random(group, 2, n, rng), 'random'))
        for change in changes:
            for gd in model.globals.values():
                tag = '[{}:{}]'.format(gd.label, change.label)
                x = model.section(gd.data)
                x_new = default_section(gd.data, group, change.new_cocycle, 'fresh')
                lam_bad = [(g, rho_S) for rho_S in x.space() for g in group.elements
                           if (lambda_S(x_new, g, rho_S) - lambda_S(x, g, rho_S)) % n
                           != lambda_difference(change, x, x_new, g, rho_S)]
                records.append(CheckRecord('lambda_cocycle_change' + tag,
                                           error='{} failures'.format(len(lam_bad)) if lam_bad else None))
                cs_bad = [rho for rho, value in cs_table(gd, x).items()
                          if cs_global(gd, x_new, rho) != (value + change.kappa(x, x_new, restrict(gd, rho))) % n]
                records.append(CheckRecord('cs_cocycle_change' + tag,
                                           error='{} failures'.format(len(cs_bad)) if cs_bad else None))
                dims = (theta_space(x).dimension, theta_space(x_new).dimension)
                records.append(CheckRecord('dimension_cocycle_change' + tag, content={'dims': list(dims)},
                                           error=None if dims[0] == dims[1] else 'dimensions differ'))
                same = transport_cocycle(partition_global(gd, x), change, x_new) == partition_global(gd, x_new)
                records.append(CheckRecord('partition_cocycle_change' + tag,
                                           error=None if same else 'transported Z differs from recomputed Z'))
        return records

    def _check_isomorphisms(self, model):
        records = []
        for iso in model.isomorphisms:
            x = model.section(iso.target.data)
            x_src = iso.transport_section(x)
            transported = transport_isomorphism(partition_global(iso.target, x), iso, x_src)
            fresh = partition_global(iso.source, x_src)
            records.append(CheckRecord('isomorphism_transport[{}]'.format(iso.label),
                                       error=None if transported == fresh else 'transported Z differs'))
        return records


def _prefixed(prefix, record):
    record.name = '{}/{}'.format(prefix, record.name)
    return record


def _group_by_message(messages, records):
    # records come back flattened in message order; split them by prefix
    grouped = [[] for _ in messages]
    index = {m.name: i for i, m in enumerate(messages)}
    for r in records:
        key = r.name.split('/', 1)[0]
        grouped[index[key]].append(r)
    return grouped


@logging_utils.log_entrance_exit
def run_suite(paths=None, homotopy=True):
    """
    Load models and run the suite.

    Args:
        paths (list of str, optional): Model documents; shipped examples by
            default.
        homotopy (bool): Include the homotopy-identity sweep.

    Returns:
        list of :class:`CheckReport <dwarith.core.structure.CheckReport>`

    """
    models = None if paths is None else [load_config(p) for p in paths]
    return InvariantSuite(models, homotopy).run()
