//! Small named semigroups used by tests, the CLI and the acceptance suite.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::rees::{rees_semigroup, ReesSpec};
use crate::semigroup::FiniteSemigroup;

fn labelled(order: usize, op: impl FnMut(usize, usize) -> usize, labels: &[&str]) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(order, op)
        .and_then(|s| s.with_labels(labels.iter().map(|l| l.to_string()).collect()))
        .expect("fixture tables are valid")
}

/// Two-element semilattice `{0, 1}` under `min`.
pub fn sl2() -> FiniteSemigroup {
    labelled(2, |a, b| a.min(b), &["0", "1"])
}

/// Left-zero semigroup: `xy = x`.
pub fn lz2() -> FiniteSemigroup {
    labelled(2, |a, _| a, &["a", "b"])
}

/// Right-zero semigroup: `xy = y`.
pub fn rz2() -> FiniteSemigroup {
    labelled(2, |_, b| b, &["a", "b"])
}

pub fn z2() -> FiniteSemigroup {
    labelled(2, |a, b| (a + b) % 2, &["1", "g"])
}

/// Index of `(i, j)` in [`b2`], with `i, j ∈ {1, 2}`.
pub fn b2_element(i: usize, j: usize) -> usize {
    1 + 2 * (i - 1) + (j - 1)
}

/// Five-element Brandt semigroup: zero plus matrix units `(i, j)`.
pub fn b2() -> FiniteSemigroup {
    let unit = |a: usize| ((a - 1) / 2, (a - 1) % 2);
    labelled(
        5,
        |a, b| {
            if a == 0 || b == 0 {
                return 0;
            }
            let ((i, j), (k, l)) = (unit(a), unit(b));
            if j == k {
                1 + 2 * i + l
            } else {
                0
            }
        },
        &["0", "11", "12", "21", "22"],
    )
}

pub const T2_ID: usize = 0;
pub const T2_SW: usize = 1;
pub const T2_C1: usize = 2;
pub const T2_C2: usize = 3;

/// Full transformation monoid on two points; `xy` applies `x` first.
pub fn t2() -> FiniteSemigroup {
    let maps = [[0, 1], [1, 0], [0, 0], [1, 1]];
    labelled(
        4,
        |x, y| {
            let composite = [maps[y][maps[x][0]], maps[y][maps[x][1]]];
            maps.iter().position(|m| *m == composite).unwrap()
        },
        &["id", "sw", "c1", "c2"],
    )
}

/// Sandwich data for [`m9`]: `Z2`, two rows, two columns, `P = [[1, 0], [0, g]]`.
pub fn m9_spec() -> ReesSpec {
    ReesSpec::new(z2(), 2, 2, vec![vec![Some(0), None], vec![None, Some(1)]]).expect("regular")
}

/// Sandwich data giving [`b2`]: trivial group, identity matrix.
pub fn b2_spec() -> ReesSpec {
    let trivial = labelled(1, |_, _| 0, &["1"]);
    ReesSpec::new(trivial, 2, 2, vec![vec![Some(0), None], vec![None, Some(0)]]).expect("regular")
}

/// Nine-element Rees matrix semigroup over `Z2`.
pub fn m9() -> FiniteSemigroup {
    rees_semigroup(&m9_spec()).expect("regular")
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub semigroup: FiniteSemigroup,
}

/// The named corpus.
pub fn corpus() -> Vec<Fixture> {
    [("SL2", sl2()), ("LZ2", lz2()), ("RZ2", rz2()), ("Z2", z2()), ("B2", b2()), ("T2", t2()), ("M9", m9())]
        .into_iter()
        .map(|(name, semigroup)| Fixture { name: name.to_string(), semigroup })
        .collect()
}

/// Looks a fixture up by case-insensitive name.
pub fn by_name(name: &str) -> Option<FiniteSemigroup> {
    corpus().into_iter().find(|f| f.name.eq_ignore_ascii_case(name)).map(|f| f.semigroup)
}

/// Every associative table on `0..n`, in lexicographic order of the flat table.
pub fn enumerate_semigroups(n: usize) -> Vec<FiniteSemigroup> {
    let cells = n * n;
    let mut table = vec![0usize; cells];
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    loop {
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = table[a * n + b];
                (0..n).all(|c| table[ab * n + c] == table[a * n + table[b * n + c]])
            })
        });
        if assoc {
            out.push(FiniteSemigroup::from_fn(n, |a, b| table[a * n + b]).expect("associative"));
        }
        let mut i = cells;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            table[i] += 1;
            if table[i] < n {
                break;
            }
            table[i] = 0;
        }
    }
}
