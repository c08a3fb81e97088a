//! Character tables of the finite subgroups of SU(2).
//!
//! Cyclic and binary dihedral tables are generated; the three exceptional
//! tables are entered by hand. Irreps are listed in McKay-diagram order with
//! the branch node(s) last.

use crate::abelian::{Elem, FiniteAbelian};
use crate::cyclo::Cyclo;

use super::{ClassInfo, GroupSpec};

/// Raw table data before derived quantities are computed.
pub(crate) struct RawTable {
    pub classes: Vec<ClassInfo>,
    pub names: Vec<String>,
    pub chars: Vec<Vec<Cyclo>>,
    pub defining: Vec<Cyclo>,
    pub ab: FiniteAbelian,
    /// A-coordinates of each 1-dimensional irrep, by name.
    pub one_dim: Vec<(String, Elem)>,
    /// Name of det ρ for each irrep.
    pub det: Vec<String>,
}

fn c(v: i64) -> Cyclo {
    Cyclo::from_int(v)
}

fn class(label: &str, size: u32, order: u32, square: usize) -> ClassInfo {
    ClassInfo {
        label: label.to_string(),
        size,
        elem_order: order,
        square,
    }
}

pub(crate) fn raw_table(g: &GroupSpec) -> RawTable {
    match *g {
        GroupSpec::Cyclic(n) => cyclic(n),
        GroupSpec::BinaryDihedral(m) => binary_dihedral(m),
        GroupSpec::BinaryTetrahedral => tetrahedral(),
        GroupSpec::BinaryOctahedral => octahedral(),
        GroupSpec::BinaryIcosahedral => icosahedral(),
    }
}

fn cyclic(n: u32) -> RawTable {
    let classes = (0..n)
        .map(|j| {
            let ord = n / num_integer::gcd(j, n);
            class(&format!("g^{}", j), 1, ord, ((2 * j) % n) as usize)
        })
        .collect();
    let names: Vec<String> = (0..n).map(|k| format!("rho{}", k)).collect();
    let chars = (0..n)
        .map(|k| {
            (0..n)
                .map(|j| Cyclo::root(n, (k as i64) * (j as i64)))
                .collect()
        })
        .collect::<Vec<Vec<Cyclo>>>();
    let defining = (0..n as usize)
        .map(|j| &chars[1 % n as usize][j] + &chars[((n - 1) % n) as usize][j])
        .collect();
    let ab = FiniteAbelian::new(vec![n]);
    let one_dim = (0..n)
        .map(|k| (format!("rho{}", k), if n > 1 { vec![k] } else { vec![] }))
        .collect();
    let det = (0..n).map(|k| format!("rho{}", k)).collect();
    RawTable {
        classes,
        names,
        chars,
        defining,
        ab,
        one_dim,
        det,
    }
}

/// D̂_m = ⟨a, b | b^{2m} = 1, a² = b^m, a b a^{-1} = b^{-1}⟩, of order 4m.
fn binary_dihedral(m: u32) -> RawTable {
    let mi = m as i64;
    let two_m = 2 * m;
    // Classes: e, b^m, {b^{±j}} for j = 1..m-1, {a b^{even}}, {a b^{odd}}.
    let mut classes = vec![class("e", 1, 1, 0), class("-e", 1, 2, 0)];
    let b_class = |j: u32| -> usize {
        let j = j % two_m;
        let j = j.min(two_m - j);
        match j {
            0 => 0,
            _ if j == m => 1,
            _ => 1 + j as usize,
        }
    };
    for j in 1..m {
        let ord = two_m / num_integer::gcd(j, two_m);
        classes.push(class(&format!("b^{}", j), 2, ord, b_class(2 * j)));
    }
    classes.push(class("a", m, 4, 1));
    classes.push(class("ab", m, 4, 1));
    let ncls = classes.len();

    let i_m = Cyclo::root(4, mi);
    let sign = |e: i64| c(if e.rem_euclid(2) == 0 { 1 } else { -1 });
    let one_dim_char = |a_even: Cyclo, b_val: i64| -> Vec<Cyclo> {
        let mut v = vec![c(1), sign(mi * if b_val == -1 { 1 } else { 0 })];
        for j in 1..m {
            v.push(if b_val == -1 { sign(j as i64) } else { c(1) });
        }
        let a_odd = if b_val == -1 {
            -&a_even
        } else {
            a_even.clone()
        };
        v.push(a_even);
        v.push(a_odd);
        v
    };
    let triv = vec![c(1); ncls];
    let p1 = one_dim_char(c(-1), 1);
    let p2 = one_dim_char(i_m.clone(), -1);
    let p3 = one_dim_char(-&i_m, -1);

    let mut names = vec!["1".to_string()];
    let mut chars = vec![triv];
    for k in 1..m {
        names.push(format!("2_{}", k));
        let mut v = vec![c(2), c(if k % 2 == 0 { 2 } else { -2 })];
        for j in 1..m {
            let e = (k * j) as i64;
            v.push(&Cyclo::root(two_m, e) + &Cyclo::root(two_m, -e));
        }
        v.push(c(0));
        v.push(c(0));
        chars.push(v);
    }
    names.push("1'''".into());
    chars.push(p3);
    names.push("1'".into());
    chars.push(p1);
    names.push("1''".into());
    chars.push(p2);

    let defining = chars[1].clone();
    let (ab, one_dim) = if m % 2 == 0 {
        (
            FiniteAbelian::new(vec![2, 2]),
            vec![
                ("1".to_string(), vec![0, 0]),
                ("1'".to_string(), vec![1, 0]),
                ("1''".to_string(), vec![0, 1]),
                ("1'''".to_string(), vec![1, 1]),
            ],
        )
    } else {
        (
            FiniteAbelian::new(vec![4]),
            vec![
                ("1".to_string(), vec![0]),
                ("1''".to_string(), vec![1]),
                ("1'".to_string(), vec![2]),
                ("1'''".to_string(), vec![3]),
            ],
        )
    };
    let det = names
        .iter()
        .map(|nm| match nm.strip_prefix("2_") {
            Some(k) if k.parse::<u32>().unwrap() % 2 == 1 => "1".to_string(),
            Some(_) => "1'".to_string(),
            None => nm.clone(),
        })
        .collect();
    RawTable {
        classes,
        names,
        chars,
        defining,
        ab,
        one_dim,
        det,
    }
}

fn tetrahedral() -> RawTable {
    let classes = vec![
        class("e", 1, 1, 0),
        class("-e", 1, 2, 0),
        class("4A", 6, 4, 1),
        class("6A", 4, 6, 6),
        class("6B", 4, 6, 5),
        class("3A", 4, 3, 6),
        class("3B", 4, 3, 5),
    ];
    let w = Cyclo::root(3, 1);
    let w2 = Cyclo::root(3, 2);
    let names = ["1", "2", "3", "2'", "1'", "2''", "1''"];
    let chars = vec![
        vec![c(1); 7],
        vec![c(2), c(-2), c(0), c(1), c(1), c(-1), c(-1)],
        vec![c(3), c(3), c(-1), c(0), c(0), c(0), c(0)],
        vec![c(2), c(-2), c(0), w.clone(), w2.clone(), -&w, -&w2],
        vec![
            c(1),
            c(1),
            c(1),
            w.clone(),
            w2.clone(),
            w.clone(),
            w2.clone(),
        ],
        vec![c(2), c(-2), c(0), w2.clone(), w.clone(), -&w2, -&w],
        vec![
            c(1),
            c(1),
            c(1),
            w2.clone(),
            w.clone(),
            w2.clone(),
            w.clone(),
        ],
    ];
    let defining = chars[1].clone();
    RawTable {
        classes,
        names: names.iter().map(|s| s.to_string()).collect(),
        chars,
        defining,
        ab: FiniteAbelian::new(vec![3]),
        one_dim: vec![
            ("1".into(), vec![0]),
            ("1'".into(), vec![1]),
            ("1''".into(), vec![2]),
        ],
        det: ["1", "1", "1", "1''", "1'", "1'", "1''"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    }
}

fn octahedral() -> RawTable {
    let classes = vec![
        class("e", 1, 1, 0),
        class("-e", 1, 2, 0),
        class("4A", 6, 4, 1),
        class("6A", 8, 6, 4),
        class("3A", 8, 3, 4),
        class("8A", 6, 8, 2),
        class("8B", 6, 8, 2),
        class("4B", 12, 4, 1),
    ];
    let s2 = Cyclo::from_powers(8, &[(1, 1), (7, 1)]);
    let ms2 = -&s2;
    let names = ["1", "2", "3", "4", "3'", "2'", "1'", "2''"];
    let chars = vec![
        vec![c(1); 8],
        vec![
            c(2),
            c(-2),
            c(0),
            c(1),
            c(-1),
            s2.clone(),
            ms2.clone(),
            c(0),
        ],
        vec![c(3), c(3), c(-1), c(0), c(0), c(1), c(1), c(-1)],
        vec![c(4), c(-4), c(0), c(-1), c(1), c(0), c(0), c(0)],
        vec![c(3), c(3), c(-1), c(0), c(0), c(-1), c(-1), c(1)],
        vec![c(2), c(-2), c(0), c(1), c(-1), ms2, s2, c(0)],
        vec![c(1), c(1), c(1), c(1), c(1), c(-1), c(-1), c(-1)],
        vec![c(2), c(2), c(2), c(-1), c(-1), c(0), c(0), c(0)],
    ];
    let defining = chars[1].clone();
    RawTable {
        classes,
        names: names.iter().map(|s| s.to_string()).collect(),
        chars,
        defining,
        ab: FiniteAbelian::new(vec![2]),
        one_dim: vec![("1".into(), vec![0]), ("1'".into(), vec![1])],
        det: ["1", "1", "1", "1", "1'", "1", "1'", "1'"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    }
}

fn icosahedral() -> RawTable {
    let classes = vec![
        class("e", 1, 1, 0),
        class("-e", 1, 2, 0),
        class("4A", 30, 4, 1),
        class("6A", 20, 6, 4),
        class("3A", 20, 3, 4),
        class("10A", 12, 10, 7),
        class("10B", 12, 10, 8),
        class("5A", 12, 5, 8),
        class("5B", 12, 5, 7),
    ];
    // φ = 1 + ζ5 + ζ5^4, the golden ratio.
    let phi = Cyclo::from_powers(5, &[(0, 1), (1, 1), (4, 1)]);
    let one_m_phi = &c(1) - &phi;
    let phi_m_one = &phi - &c(1);
    let m_phi = -&phi;
    let names = ["1", "2", "3", "4", "5", "6", "4'", "2'", "3'"];
    let chars = vec![
        vec![c(1); 9],
        vec![
            c(2),
            c(-2),
            c(0),
            c(1),
            c(-1),
            phi.clone(),
            one_m_phi.clone(),
            phi_m_one.clone(),
            m_phi.clone(),
        ],
        vec![
            c(3),
            c(3),
            c(-1),
            c(0),
            c(0),
            phi.clone(),
            one_m_phi.clone(),
            one_m_phi.clone(),
            phi.clone(),
        ],
        vec![c(4), c(-4), c(0), c(-1), c(1), c(1), c(1), c(-1), c(-1)],
        vec![c(5), c(5), c(1), c(-1), c(-1), c(0), c(0), c(0), c(0)],
        vec![c(6), c(-6), c(0), c(0), c(0), c(-1), c(-1), c(1), c(1)],
        vec![c(4), c(4), c(0), c(1), c(1), c(-1), c(-1), c(-1), c(-1)],
        vec![
            c(2),
            c(-2),
            c(0),
            c(1),
            c(-1),
            one_m_phi.clone(),
            phi.clone(),
            m_phi.clone(),
            phi_m_one.clone(),
        ],
        vec![
            c(3),
            c(3),
            c(-1),
            c(0),
            c(0),
            one_m_phi.clone(),
            phi.clone(),
            phi.clone(),
            one_m_phi,
        ],
    ];
    let defining = chars[1].clone();
    RawTable {
        classes,
        names: names.iter().map(|s| s.to_string()).collect(),
        chars,
        defining,
        ab: FiniteAbelian::trivial(),
        one_dim: vec![("1".into(), vec![])],
        det: vec!["1".to_string(); 9],
    }
}
