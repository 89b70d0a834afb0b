"""Image records shared by the analytic and numeric lens solvers."""

from __future__ import annotations

from dataclasses import dataclass, replace

__all__ = ["Image", "ImageSet", "dedup_images", "sort_images"]

DIM = "dim"
BRIGHT = "bright"
CONTINUUM = "continuum"


@dataclass(frozen=True)
class Image:
    z: complex
    kind: str
    residual: float
    label: str | None = None
    boundary: bool = False

    def relabel(self, label: str) -> "Image":
        return replace(self, label=label)


@dataclass(frozen=True)
class ImageSet:
    source: complex
    images: tuple[Image, ...]
    model: str

    def counts(self) -> dict[str, int]:
        """Dim/bright tallies; continuum counts as dim, boundary hits excluded."""
        dim = sum(
            1 for im in self.images if im.kind in (DIM, CONTINUUM) and not im.boundary
        )
        bright = sum(1 for im in self.images if im.kind == BRIGHT and not im.boundary)
        return {"dim": dim, "bright": bright}

    def positions(self, kind: str | None = None) -> list[complex]:
        return [
            im.z
            for im in self.images
            if (kind is None or im.kind == kind) and not im.boundary
        ]


def sort_images(images) -> tuple[Image, ...]:
    return tuple(sorted(images, key=lambda im: (im.z.real, im.z.imag, im.kind)))


def dedup_images(images, radius: float) -> tuple[Image, ...]:
    """Greedy dedup keeping the lowest-residual representative of each clump."""
    pool = sorted(images, key=lambda im: im.residual)
    kept: list[Image] = []
    for im in pool:
        if all(abs(im.z - other.z) > radius for other in kept):
            kept.append(im)
    return sort_images(kept)
