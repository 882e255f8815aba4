"""Write the multiplication table of the partition monoid of degree n.

Points 0..n-1 are the top row and n..2n-1 the bottom row. Element 0 is the
identity. Usage: python3 partition_monoid_table.py 2 > fixtures/p2.table
"""

import sys


def set_partitions(points):
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def canonical(blocks):
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def product(a, b, n):
    # a occupies 0..2n-1; its bottom row is glued to the top row of b,
    # whose points are shifted by n
    parent = list(range(3 * n))
    for blocks, shift in ((a, 0), (b, n)):
        for block in blocks:
            for x in block[1:]:
                parent[find(parent, x + shift)] = find(parent, block[0] + shift)
    outer = list(range(n)) + list(range(2 * n, 3 * n))
    groups = {}
    for x in outer:
        groups.setdefault(find(parent, x), []).append(x if x < n else x - n)
    return canonical(groups.values())


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    identity = canonical([[i, i + n] for i in range(n)])
    elements = sorted(canonical(p) for p in set_partitions(list(range(2 * n))))
    elements.remove(identity)
    elements.insert(0, identity)
    index = {e: i for i, e in enumerate(elements)}
    print(f"# partition monoid of degree {n}")
    print(len(elements))
    for a in elements:
        print(" ".join(str(index[product(a, b, n)]) for b in elements))


if __name__ == "__main__":
    main()
