"""Usage Examples."""
import argparse
import os

from dwarith import load_config, partition_global, theta_space
from dwarith.global_theory import check_decomposition, cs_closed, cs_table
from dwarith.models import shipped_model_paths
from dwarith.quantum import glue_pair, partition_closed, partition_tube
from dwarith.utilities import json_utils


def _model(name):
    for path in shipped_model_paths():
        if os.path.basename(path) == name + '.json':
            return load_config(path)
    raise ValueError('No shipped model named {!r}.'.format(name))


def example_chern_simons(output_dir=''):
    """CS tables and partition functions of the tame model."""
    model = _model('tame_z4')
    gd = model.globals['S']
    x = model.section(gd.data)

    table = [{'rho': list(rho.key), 'cs': value} for rho, value in cs_table(gd, x).items()]
    json_utils.write_json(table, os.path.join(output_dir, r'tame_cs.json'), indent=2)

    json_utils.write_json(partition_global(gd, x).to_json(),
                          os.path.join(output_dir, r'tame_partition.json'), indent=2)


def example_quantum_space(output_dir=''):
    """Quantum space of the paired Klein model."""
    model = _model('klein_paired')
    x = model.section(model.globals['S'].data)
    json_utils.write_json(theta_space(x).to_json(),
                          os.path.join(output_dir, r'klein_theta_space.json'), indent=2)


def example_gluing(output_dir=''):
    """Gluing formula along an unramified prime."""
    model = _model('gluing_tube')
    gl = model.gluings[0]
    x = model.section(gl.outer.data)

    tube = partition_tube(gl.s2_data, x.restrict(gl.s2_names), 'reversed')
    glued = glue_pair(partition_global(gl.outer, x), tube)
    inner = partition_global(gl.inner, x.restrict(gl.s1_names))
    result = {'glued': glued.to_json(),
              'inner': inner.to_json(),
              'equal': glued == inner,
              'decomposition': check_decomposition(gl, x).to_json()}
    json_utils.write_json(result, os.path.join(output_dir, r'gluing_tube.json'), indent=2)


def example_closed(output_dir=''):
    """Closed invariants computed through two different gluings."""
    model = _model('closed_gluing')
    result = {}
    for gl in model.closed_gluings():
        x = model.section(gl.outer.data)
        result[gl.label] = {'cs': [{'rho': list(rho1.key), 'value': cs_closed(gl, x, rho1)}
                                   for rho1 in gl.inner.homs(model.gauge_group)],
                            'partition': partition_closed(gl, x).to_json(),
                            'tube_primes': gl.s2_names}
    json_utils.write_json(result, os.path.join(output_dir, r'closed_gluing.json'), indent=2)


def main():
    """Run the examples."""
    parser = argparse.ArgumentParser(
        description='Compute invariants of the shipped models.',
        formatter_class=argparse.RawTextHelpFormatter)
    required = parser.add_argument_group('Required arguments:')
    required.add_argument('-o',
                          help='Output directory for results.',
                          required=True,
                          type=str)
    args = parser.parse_args()

    print('Chern-Simons...')
    example_chern_simons(args.o)
    print('Quantum spaces...')
    example_quantum_space(args.o)
    print('Gluing...')
    example_gluing(args.o)
    print('Closed invariants...')
    example_closed(args.o)
    print('COMPLETE')


if __name__ == '__main__':
    main()
