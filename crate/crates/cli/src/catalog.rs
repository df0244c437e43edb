//! Worked examples shipped with the tool, with their hand-derived invariants.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub length_psi: u64,
    pub length_cotangent_tors: u64,
    pub delta: i64,
    pub ci: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
    pub codimension: usize,
    pub expected: Expected,
}

const fn exp(length_psi: u64, length_cotangent_tors: u64, delta: i64, ci: bool) -> Expected {
    Expected { length_psi, length_cotangent_tors, delta, ci }
}

pub const ENTRIES: &[Entry] = &[
    Entry {
        name: "o",
        summary: "O = Z_(3) itself",
        text: include_str!("../../../catalog/o.prob"),
        codimension: 0,
        expected: exp(0, 0, 0, true),
    },
    Entry {
        name: "hyper_m1",
        summary: "O[x]/(x^2 - 2x)",
        text: include_str!("../../../catalog/hyper_m1.prob"),
        codimension: 0,
        expected: exp(1, 1, 0, true),
    },
    Entry {
        name: "hyper_m3",
        summary: "O[x]/(x^2 - 8x)",
        text: include_str!("../../../catalog/hyper_m3.prob"),
        codimension: 0,
        expected: exp(3, 3, 0, true),
    },
    Entry {
        name: "fiber3",
        summary: "three-branch fiber product over F_2",
        text: include_str!("../../../catalog/fiber3.prob"),
        codimension: 0,
        expected: exp(1, 2, 1, false),
    },
    Entry {
        name: "hyper_m1_lift",
        summary: "codimension-1 lifting of hyper_m1",
        text: include_str!("../../../catalog/hyper_m1_lift.prob"),
        codimension: 1,
        expected: exp(1, 1, 0, true),
    },
    Entry {
        name: "hyper_m3_lift",
        summary: "codimension-1 lifting of hyper_m3",
        text: include_str!("../../../catalog/hyper_m3_lift.prob"),
        codimension: 1,
        expected: exp(3, 3, 0, true),
    },
    Entry {
        name: "fiber3_lift",
        summary: "codimension-1 lifting of fiber3",
        text: include_str!("../../../catalog/fiber3_lift.prob"),
        codimension: 1,
        expected: exp(1, 2, 1, false),
    },
    Entry {
        name: "regular2",
        summary: "O[y,z], regular of codimension 2",
        text: include_str!("../../../catalog/regular2.prob"),
        codimension: 2,
        expected: exp(0, 0, 0, true),
    },
    Entry {
        name: "hyper_codim2",
        summary: "codimension-2 lifting of hyper_m1",
        text: include_str!("../../../catalog/hyper_codim2.prob"),
        codimension: 2,
        expected: exp(1, 1, 0, true),
    },
    Entry {
        name: "koszul_action",
        summary: "derived action of A/(x) on the Koszul complex of x",
        text: include_str!("../../../catalog/koszul_action.prob"),
        codimension: 0,
        expected: exp(1, 1, 0, true),
    },
];

pub fn find(name: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.name == name)
}
