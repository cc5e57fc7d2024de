"""Helper functions for the compact string forms used in model documents."""
import re

_CALL = re.compile(r'^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$')
_CYCLE = re.compile(r'\(([^()]*)\)')


def parse_call(text):
    """
    Parse a builtin reference such as ``cyclic(4)`` or ``identity``.

    Args:
        text (str): Builtin reference.
    Returns:
        tuple: (name, tuple of int arguments).
    Raises:
        ValueError: If the text is not of the form ``name`` or
            ``name(int, int, ...)``.

    """
    match = _CALL.match(text)
    if match is None:
        raise ValueError('Malformed builtin reference: {!r}'.format(text))
    name, raw_args = match.group(1), match.group(2)
    if raw_args is None or not raw_args.strip():
        return name, ()
    try:
        args = tuple(int(x) for x in raw_args.split(','))
    except ValueError:
        raise ValueError('Builtin arguments must be integers: {!r}'.format(text))
    return name, args


def parse_cycles(text, degree):
    """
    Parse a permutation in 1-based cycle notation.

    ``(12)(34)`` and ``(1 2)(3 4)`` are both accepted; ``()`` is the
    identity. Single-digit points may be written without separators.

    Args:
        text (str): Cycle notation.
        degree (int): Number of points moved by the symmetric group.
    Returns:
        tuple: Images of 0..degree-1 (0-based).

    """
    images = list(range(degree))
    stripped = text.replace(' ', '')
    if _CYCLE.sub('', stripped):
        raise ValueError('Malformed cycle notation: {!r}'.format(text))
    for cycle_text in _CYCLE.findall(text):
        if ' ' in cycle_text.strip() or ',' in cycle_text:
            points = [int(x) - 1 for x in re.split(r'[\s,]+', cycle_text.strip()) if x]
        else:
            points = [int(x) - 1 for x in cycle_text.strip()]
        if any(p < 0 or p >= degree for p in points):
            raise ValueError('Point out of range in {!r}'.format(text))
        for i, point in enumerate(points):
            images[point] = points[(i + 1) % len(points)]
    return tuple(images)


def format_cycles(images):
    """
    Format a permutation (0-based image tuple) in 1-based cycle notation.

    Args:
        images (tuple of int): Images of 0..n-1.
    Returns:
        str: e.g. ``(123)`` or ``()`` for the identity.

    """
    seen = set()
    parts = []
    for start in range(len(images)):
        if start in seen or images[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        nxt = images[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = images[nxt]
        sep = '' if len(images) < 10 else ' '
        parts.append('(' + sep.join(str(p + 1) for p in cycle) + ')')
    return ''.join(parts) or '()'
