from argparse import ArgumentTypeError

from twp.typing import PieceTuple


def str_to_bool(value):
    if isinstance(value, bool):
        return value
    if value.lower() in {'false', 'f', '0', 'no', 'n', 'off'}:
        return False
    elif value.lower() in {'true', 't', '1', 'yes', 'y', 'on'}:
        return True
    raise ValueError(f'{value} is not a valid boolean value')


def parse_piece(value: str) -> PieceTuple:
    """Argparse type for kernel pieces written as :obj:`'1,2'`."""
    from twp.kernel.pieces import KernelPieceId
    try:
        return tuple(KernelPieceId.parse(value))
    except (TypeError, ValueError) as err:
        raise ArgumentTypeError(str(err))


def parse_point(value: str):
    """Argparse type for points written as :obj:`'big:1.5'`."""
    from twp.model.point import Point
    try:
        return Point.parse(value)
    except (TypeError, ValueError) as err:
        raise ArgumentTypeError(str(err))


def positive_float(value: str) -> float:
    number = float(value)
    if not number > 0:
        raise ArgumentTypeError(f"{value} is not positive.")
    return number
