#!/usr/bin/env python3
"""Regenerate include/normalhst/selftest/corpus.hpp from the files under data/."""

import pathlib
import sys

ORDER = [
    "single_tet.tri", "doubled_tet.tri", "simplex4_boundary.tri", "s3_one_tet.tri",
    "pseudo_manifold.tri", "selfglue.tri",
    "doubled_tet_vertex_link.json", "s3_one_tet_octagon.json", "single_tet_two_octagons.json",
    "single_tet_tube.json",
    "genus2.json", "torus.json", "product_torus.json", "torus_with_spheres.json",
    "bridge.pres", "stacked.pres", "exchange.pres",
]

HEAD = """#pragma once

// Copies of the files under data/, so the self-test runs without a checkout.

#include <array>
#include <string_view>

namespace normalhst::corpus {

struct File {
    std::string_view name;
    std::string_view text;
};

"""

TAIL = """}};

inline std::string_view text(std::string_view name) {
    for (const auto& f : kFiles)
        if (f.name == name) return f.text;
    return {};
}

}  // namespace normalhst::corpus
"""


def main() -> int:
    root = pathlib.Path(__file__).resolve().parent.parent
    data = root / "data"
    names = ORDER + sorted(p.name for p in data.iterdir() if p.is_file() and p.name not in ORDER)
    out = [HEAD, f"inline constexpr std::array<File, {len(names)}> kFiles{{{{\n"]
    for name in names:
        text = (data / name).read_text()
        if ")~\"" in text:
            sys.exit(f"{name}: contains the raw-string delimiter")
        out.append(f'    {{"{name}", R"~({text})~"}},\n')
    out.append(TAIL)
    (root / "include/normalhst/selftest/corpus.hpp").write_text("".join(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
