#################################################################################
#
#             Project Title:  Registration of transurf reference fixtures
#             Date:           2026-10-19
#
#################################################################################


#################################################################################
#   Module Imports
#################################################################################

from transurf.errors import UnknownFixture

#################################################################################
#   Function-Class Declaration
#################################################################################


fixture_list = []
_builders = {}
_generators = {}


def register(
    id,
    entry_point,
    max_params=0,
    generator=None
):
    """Register a fixture builder under a CLI name

    :id: str: fixture name, lower case without ':'
    :entry_point: callable(params, n, **kwargs) -> TranslationSurface
    :max_params: int: number of numeric parameters accepted after the name
    :generator: callable(params, n) -> (SpaceCurve, closed-form curvature or None)

    """
    assert id == id.lower() and ":" not in id,\
        "ERROR: fixture name '{}' must be lower case without ':'".format(id)
    assert id not in fixture_list,\
        "ERROR: fixture '{}' is already registered".format(id)

    _builders[id] = (entry_point, max_params)
    if generator is not None:
        _generators[id] = generator

    # Add the fixture to the set
    fixture_list.append(id)


def _lookup(id, params):
    if id not in _builders:
        raise UnknownFixture("Fixture '{}' not recognized, must be one of: {}"
                             .format(id, fixture_list))
    entry_point, max_params = _builders[id]
    if len(params) > max_params:
        raise UnknownFixture("Fixture '{}' takes at most {} parameters, got {}"
                             .format(id, max_params, len(params)))
    return entry_point


def make(id, params=(), **kwargs):
    """Build a registered fixture

    :id: str: fixture name
    :params: list of floats parsed from the specifier
    :returns: TranslationSurface

    """
    entry_point = _lookup(id, params)
    return entry_point(list(params), **kwargs)


def make_generator(id, params=(), n=2001):
    """Finely sampled first generating curve of a fixture

    :id: str: fixture name
    :params: list of floats parsed from the specifier
    :n: int: number of samples
    :returns: (SpaceCurve, callable or None): the curve and its
              arc-length curvature in closed form when known

    """
    _lookup(id, params)
    if id not in _generators:
        return None, None
    return _generators[id](list(params), n)

#################################################################################
#   Main Method
#################################################################################
