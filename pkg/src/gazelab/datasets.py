"""Stimulus image sources: procedural by default, a user directory when given."""

import os
from typing import Optional

import numpy as np
from PIL import Image

from .errors import DatasetError
from .stimuli.procedural import gen_procedural_image

_EXTENSIONS = (".png", ".jpg", ".jpeg", ".bmp", ".gif")


class ImageSource:
    """Images addressed by a non-negative integer id."""

    size: Optional[int] = None  # None = unbounded

    def get(self, image_id: int) -> np.ndarray:
        raise NotImplementedError


class ProceduralImages(ImageSource):
    size = None

    def __init__(self, image_px: int = 64):
        self.image_px = image_px

    def get(self, image_id: int) -> np.ndarray:
        return gen_procedural_image(image_id, self.image_px)


class DirectoryImages(ImageSource):
    """All images of a directory, sorted by filename, validated to equal sizes."""

    def __init__(self, images: list, names: list):
        self._images = images
        self.names = names
        self.size = len(images)

    def get(self, image_id: int) -> np.ndarray:
        return self._images[image_id % self.size]


def load_image_dataset(directory: str) -> DirectoryImages:
    if not os.path.isdir(directory):
        raise DatasetError(f"not a directory: {directory}")
    names = sorted(
        f for f in os.listdir(directory) if f.lower().endswith(_EXTENSIONS)
    )
    if not names:
        raise DatasetError(f"no images found in {directory}")
    images = []
    shape = None
    for name in names:
        with Image.open(os.path.join(directory, name)) as img:
            arr = np.asarray(img.convert("RGB"), dtype=np.uint8)
        if shape is None:
            shape = arr.shape
        elif arr.shape != shape:
            raise DatasetError(
                f"{name}: dimensions {arr.shape[:2]} differ from {shape[:2]}"
            )
        images.append(arr)
    return DirectoryImages(images, names)


def make_image_source(dataset_dir: Optional[str]) -> ImageSource:
    if dataset_dir:
        return load_image_dataset(dataset_dir)
    return ProceduralImages()
