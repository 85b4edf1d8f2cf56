"""Board-building helpers for tests."""


def across(word: str, row: int, col: int) -> dict[tuple[int, int], str]:
    return {(row, col + i): ch for i, ch in enumerate(word)}


def down(word: str, row: int, col: int) -> dict[tuple[int, int], str]:
    return {(row + i, col): ch for i, ch in enumerate(word)}
