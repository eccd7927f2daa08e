import os
import csv
from typing import List, Callable, Any, TextIO


LOGGER_NAME = 'finite_memory'


# One classical fourth-order Runge-Kutta step of y' = f(y) for autonomous right-hand sides
def rk4_step(rhs: Callable[[Any], Any], state: Any, dt: float):
    k1 = rhs(state)
    k2 = rhs(state + 0.5 * dt * k1)
    k3 = rhs(state + 0.5 * dt * k2)
    k4 = rhs(state + dt * k3)
    return state + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


# 17 significant digits round-trip every double exactly
def format_float(value: float):
    return f'{float(value):.17g}'


def write_csv(stream: TextIO, header: List[str], rows: List[List[float]], comments: List[str] = None):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(value) for value in row])
    for comment in comments or []:
        stream.write(f'# {comment}\n')


def write_csv_file(path: str, header: List[str], rows: List[List[float]], comments: List[str] = None):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', newline='') as file:
        write_csv(file, header, rows, comments)


# Returns (header, rows, comments); rows are lists of floats
def read_csv_file(path: str):
    header, rows, comments = None, [], []
    with open(path, 'r', newline='') as file:
        for line in file:
            line = line.rstrip('\n')
            if line.startswith('#'):
                comments.append(line[1:].strip())
                continue
            if not line:
                continue
            fields = next(csv.reader([line]))
            if header is None:
                header = fields
                continue
            if len(fields) != len(header):
                raise ValueError(f'Row arity {len(fields)} does not match header arity {len(header)} in: {path}.')
            rows.append([float(field) for field in fields])
    if header is None:
        raise ValueError(f'CSV file has no header: {path}.')
    return header, rows, comments
