"""Binary PGM (P5) reader and writer for 8-bit grayscale frames."""
from pathlib import Path
from typing import Tuple, Union

from numpy import frombuffer, uint8

from edge_fs._errors import (
    FrameIOError,
    PGMDimensionError,
    PGMHeaderError,
    PGMTruncatedError,
)
from edge_fs.frame_io._image import GrayImage

PGM_MAGIC = b"P5"
MAX_PIXELS = 1 << 28
_WHITESPACE = b" \t\r\n\v\f"
HEADER_CHUNK_BYTES = 256


def _parse_header(data: bytes) -> Tuple[int, int, int, int]:
    """
    Parses the P5 header tokens.

    Returns:
        tuple: (width, height, maxval, payload_offset), where `payload_offset` points just past the single
            whitespace byte that terminates the maxval token.
    """
    if not data.startswith(PGM_MAGIC) or len(data) < 3 or data[2] not in _WHITESPACE:
        raise PGMHeaderError(f"Not a binary PGM file (magic {data[:3]!r}).")

    tokens = []
    pos = len(PGM_MAGIC)
    while len(tokens) < 3:
        # skip whitespace and comments between tokens
        while pos < len(data) and (data[pos] in _WHITESPACE or data[pos] == ord("#")):
            if data[pos] == ord("#"):
                eol = data.find(b"\n", pos)
                pos = len(data) if eol < 0 else eol + 1
            else:
                pos += 1
        start = pos
        while pos < len(data) and data[pos] not in _WHITESPACE:
            pos += 1
        token = data[start:pos]
        if not token:
            raise PGMHeaderError("PGM header ended before width, height and maxval were read.")
        if not token.isdigit():
            raise PGMHeaderError(f"PGM header token {token!r} is not an unsigned integer.")
        tokens.append(int(token))

    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise PGMHeaderError("PGM maxval must be followed by a single whitespace byte.")

    width, height, maxval = tokens
    if not 0 < maxval <= 255:
        raise PGMHeaderError(f"Only 8-bit PGM is supported (maxval {maxval}).")
    if width <= 0 or height <= 0 or width * height > MAX_PIXELS:
        raise PGMDimensionError(f"Unsupported PGM dimensions {width}x{height}.")
    return width, height, maxval, pos + 1


def read_pgm_header(path: Union[str, Path]) -> Tuple[int, int]:
    """
    Reads only the header of a PGM file and returns `(width, height)`.

    The file is read in chunks until the header parses, so comments of any length are skipped.
    """
    head = b""
    try:
        with open(path, "rb") as f:
            while True:
                chunk = f.read(HEADER_CHUNK_BYTES)
                head += chunk
                try:
                    width, height, _, _ = _parse_header(head)
                    return width, height
                except PGMHeaderError:
                    # an incomplete header fails the same way; only give up at end of file
                    if not chunk or (len(head) >= 3 and not head.startswith(PGM_MAGIC)):
                        raise
    except OSError as err:
        raise FrameIOError(f'Could not read "{path}": {err}') from err


def load_pgm(path: Union[str, Path]) -> GrayImage:
    """
    Loads a binary (P5) 8-bit PGM file.

    Pixel bytes are returned exactly as stored; a maxval below 255 is not rescaled.

    Args:
        path (str or Path): File to read.

    Returns:
        GrayImage: The decoded image.
    """
    try:
        data = Path(path).read_bytes()
    except OSError as err:
        raise FrameIOError(f'Could not read "{path}": {err}') from err

    width, height, _, offset = _parse_header(data)
    n_pixels = width * height
    payload = data[offset : offset + n_pixels]
    if len(payload) < n_pixels:
        raise PGMTruncatedError(
            f'"{path}" holds {len(payload)} payload bytes, expected {n_pixels}.'
        )
    pixels = frombuffer(payload, dtype=uint8).reshape(height, width)
    return GrayImage(width_px=width, height_px=height, pixels=pixels)


def save_pgm(img: GrayImage, path: Union[str, Path]) -> None:
    """Writes `img` as a binary PGM with maxval 255; `load_pgm` reproduces it bit-exactly."""
    header = b"%s\n%d %d\n255\n" % (PGM_MAGIC, img.width_px, img.height_px)
    try:
        with open(path, "wb") as f:
            f.write(header)
            f.write(img.tobytes())
    except OSError as err:
        raise FrameIOError(f'Could not write "{path}": {err}') from err
