import os
import re
import json
import shutil

import numpy as np
import pandas as pd
import trimesh
from trimesh.exchange.ply import export_ply

from transurf.errors import ParseError, IoError, GridTooCoarse
from transurf.curve import SpaceCurve, SampledCurve, CURVE_COLUMNS, SAMPLED_COLUMNS

MESH_FORMATS = ('obj', 'ply')
FLOAT_FORMAT = '%.17g'


def get_file_name_without_extension(file):
    """
    Gets the file name in the given path without extension.
    :param str file: the path to the file.
    :rtype: str
    :return: the file name in the given path without extension.
    """
    file = os.path.basename(file)
    return file.replace(os.path.splitext(file)[-1], '')


def create_clear_dir(path, clear=False):
    """
    Creates a directory in the given path. If it exists, optionally clears the directory.
    :param str path: the path to the directory to create/clear.
    :param bool clear: whether to clear the directory if it exists.
    :return:
    """
    try:
        if clear and os.path.exists(path):
            shutil.rmtree(path)
        if not os.path.exists(path):
            os.makedirs(path)
    except OSError as e:
        raise IoError('could not create output directory {}: {}'.format(path, e))


def write_csv(df, path):
    """
    Writes a dataframe with full double precision and LF line endings.
    :param pd.DataFrame df: the data.
    :param str path: the output file.
    """
    try:
        df.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    except OSError as e:
        raise IoError('could not write {}: {}'.format(path, e))


def write_json(obj, path):
    """
    Writes a JSON document with a stable layout (indent 4, insertion-ordered keys, trailing LF).
    :param dict obj: JSON-serializable object without NaNs.
    :param str path: the output file.
    """
    try:
        with open(path, 'w', newline='\n') as json_file:
            json.dump(obj, json_file, indent=4, allow_nan=False)
            json_file.write('\n')
    except OSError as e:
        raise IoError('could not write {}: {}'.format(path, e))


def mesh_faces(shape, degenerate=None):
    """
    Two triangles per grid cell over row-major (s-major) vertices, wound so that the face normal
    follows ∂Ψ/∂s × ∂Ψ/∂t. Cells touching a degenerate node are left out.
    :param tuple shape: grid shape (ns, nt), both at least 2.
    :param np.ndarray degenerate: boolean node mask of the same shape.
    :rtype: (np.ndarray, int)
    :return: faces (m, 3) of 0-based vertex indices and the number of omitted cells.
    """
    ns, nt = shape
    if ns < 2 or nt < 2:
        raise GridTooCoarse('a mesh needs at least a 2x2 grid, got {}x{}'.format(ns, nt))
    idx = np.arange(ns * nt).reshape(ns, nt)
    v00, v10, v11, v01 = idx[:-1, :-1], idx[1:, :-1], idx[1:, 1:], idx[:-1, 1:]
    keep = np.ones((ns - 1, nt - 1), dtype=bool)
    if degenerate is not None:
        d = np.asarray(degenerate, dtype=bool)
        keep = ~(d[:-1, :-1] | d[1:, :-1] | d[1:, 1:] | d[:-1, 1:])
    first = np.stack([v00, v10, v11], axis=-1)[keep]
    second = np.stack([v00, v11, v01], axis=-1)[keep]
    faces = np.stack([first, second], axis=1).reshape(-1, 3)
    return faces, int(keep.size - np.count_nonzero(keep))


def export_mesh(surface, path, fmt='obj'):
    """
    Writes the surface grid as a triangle mesh. OBJ files hold `v x y z` lines with 17 significant
    digits followed by 1-based `f i j k` lines; PLY files are written as ASCII by trimesh.
    :param TranslationSurface surface: the surface.
    :param str path: the output file.
    :param str fmt: 'obj' or 'ply'.
    :rtype: dict
    :return: vertex, face and omitted-cell counts.
    """
    assert fmt in MESH_FORMATS, "ERROR: mesh format must be one of {}".format(MESH_FORMATS)
    ns, nt = surface.shape
    vertices = surface.position.reshape(ns * nt, 3)
    faces, omitted = mesh_faces((ns, nt), surface.degenerate)
    try:
        if fmt == 'obj':
            with open(path, 'w', newline='\n') as obj_file:
                np.savetxt(obj_file, vertices, fmt='v {0} {0} {0}'.format(FLOAT_FORMAT), newline='\n')
                np.savetxt(obj_file, faces + 1, fmt='f %d %d %d', newline='\n')
        else:
            mesh = trimesh.Trimesh(vertices=vertices, faces=faces, process=False)
            with open(path, 'wb') as ply_file:
                ply_file.write(export_ply(mesh, encoding='ascii'))
    except OSError as e:
        raise IoError('could not write mesh {}: {}'.format(path, e))
    return {'vertices': int(len(vertices)), 'faces': int(len(faces)), 'omitted_cells': omitted}


def _parse_error_line(message):
    match = re.search(r'line (\d+)', message)
    return int(match.group(1)) if match else None


def read_space_curve(path):
    """
    Reads a curve file in the `s,x,y,z,tx,...,bz,kappa,tau` schema or in the sampled `u,x,y,z`
    schema; the header decides which.
    :param str path: the CSV file.
    :rtype: SpaceCurve or SampledCurve
    """
    try:
        df = pd.read_csv(path, dtype=str, skipinitialspace=True)
    except FileNotFoundError as e:
        raise IoError('could not read {}: {}'.format(path, e))
    except pd.errors.EmptyDataError:
        raise ParseError('{} is empty'.format(path), line=1)
    except pd.errors.ParserError as e:
        raise ParseError('{} is malformed: {}'.format(path, str(e).strip()), line=_parse_error_line(str(e)))

    columns = [c.strip() for c in df.columns]
    if columns == CURVE_COLUMNS:
        schema = CURVE_COLUMNS
    elif columns == SAMPLED_COLUMNS:
        schema = SAMPLED_COLUMNS
    else:
        raise ParseError('header {} matches neither {} nor {}'.format(columns, CURVE_COLUMNS, SAMPLED_COLUMNS),
                         line=1)
    df.columns = columns

    values = df.apply(pd.to_numeric, errors='coerce').to_numpy(dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        row, col = (int(i) for i in np.argwhere(bad)[0])
        raw = df.iat[row, col]
        what = 'missing value' if pd.isna(raw) else 'non-numeric value {!r}'.format(raw)
        # header is line 1
        raise ParseError('{} in {}'.format(what, path), line=row + 2, column=schema[col])
    if len(values) < 2:
        raise GridTooCoarse('{} holds {} samples'.format(path, len(values)))

    param = values[:, 0]
    steps = np.diff(param)
    if np.any(steps <= 0):
        row = int(np.nonzero(steps <= 0)[0][0]) + 1
        raise ParseError('parameter is not strictly increasing in {}'.format(path), line=row + 2,
                         column=schema[0])

    if schema is SAMPLED_COLUMNS:
        return SampledCurve(param, values[:, 1:4])
    return SpaceCurve.from_frame(pd.DataFrame(values, columns=CURVE_COLUMNS))
