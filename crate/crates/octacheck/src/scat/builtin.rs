//! The three built-in presentations: the six-object octahedron category,
//! and the two exceptional-fragment categories used by the retraction check.

use std::collections::BTreeMap;

use super::{ArrowDecl, PresCategory};
use crate::exactalg::{Field, Scalar};
use crate::Result;

/// Which built-in presentation to construct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinCategory {
    /// Objects `A..F` with the fourteen octahedron arrows and their
    /// composition relations.
    S,
    /// The path category of `A -> B -> C` with one-dimensional Hom spaces.
    E,
    /// The fragment on line-bundle powers of the plane: three-dimensional
    /// Hom spaces in each step, six-dimensional composite space, with the
    /// symmetric composition rule `b_j . a_i = c_{ij} = c_{ji}`.
    EPrime,
}

/// Arrow and object indices of the octahedron category, looked up once.
#[derive(Clone, Copy, Debug)]
pub struct SArrows {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
    pub f_obj: usize,
    pub f: usize,
    pub g: usize,
    pub h: usize,
    pub fp: usize,
    pub gp: usize,
    pub hp: usize,
    pub fpp: usize,
    pub gpp: usize,
    pub hpp: usize,
    pub k: usize,
    pub kp: usize,
    pub kpp: usize,
    pub l: usize,
    pub lp: usize,
}

impl SArrows {
    pub fn lookup(cat: &PresCategory) -> SArrows {
        SArrows {
            a: cat.object_index("A"),
            b: cat.object_index("B"),
            c: cat.object_index("C"),
            d: cat.object_index("D"),
            e: cat.object_index("E"),
            f_obj: cat.object_index("F"),
            f: cat.arrow_index("f"),
            g: cat.arrow_index("g"),
            h: cat.arrow_index("h"),
            fp: cat.arrow_index("f'"),
            gp: cat.arrow_index("g'"),
            hp: cat.arrow_index("h'"),
            fpp: cat.arrow_index("f''"),
            gpp: cat.arrow_index("g''"),
            hpp: cat.arrow_index("h''"),
            k: cat.arrow_index("k"),
            kp: cat.arrow_index("k'"),
            kpp: cat.arrow_index("k''"),
            l: cat.arrow_index("l"),
            lp: cat.arrow_index("l'"),
        }
    }
}

/// Builds one of the built-in presentations over the given field.
pub fn build_category(field: Field, which: BuiltinCategory) -> Result<PresCategory> {
    match which {
        BuiltinCategory::S => build_s(field),
        BuiltinCategory::E => build_e(field),
        BuiltinCategory::EPrime => build_eprime(field),
    }
}

fn decl(name: &str, src: usize, tgt: usize, degree: i64) -> ArrowDecl {
    ArrowDecl {
        name: name.into(),
        src,
        tgt,
        degree,
    }
}

fn build_s(field: Field) -> Result<PresCategory> {
    let objects: Vec<String> = ["A", "B", "C", "D", "E", "F"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let (a, b, c, d, e, f_obj) = (0usize, 1usize, 2usize, 3usize, 4usize, 5usize);
    // order fixes the arrow indices used below
    let arrows = vec![
        decl("f", a, b, 0),       // 0
        decl("g", b, c, 0),       // 1
        decl("h", a, c, 0),       // 2
        decl("f'", b, d, 0),      // 3
        decl("l", b, e, 0),       // 4
        decl("h'", c, e, 0),      // 5
        decl("g'", c, f_obj, 0),  // 6
        decl("k", d, e, 0),       // 7
        decl("f''", d, a, 1),     // 8
        decl("k'", e, f_obj, 0),  // 9
        decl("h''", e, a, 1),     // 10
        decl("l'", e, b, 1),      // 11
        decl("g''", f_obj, b, 1), // 12
        decl("k''", f_obj, d, 1), // 13
    ];
    let (f, g, h, fp, l, hp, gp, k, fpp, kp, hpp, lp, gpp, kpp) =
        (0usize, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13);
    let one = || field.one();
    let mut comp: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
    comp.insert((g, f), vec![(h, one())]);
    comp.insert((hp, g), vec![(l, one())]);
    comp.insert((k, fp), vec![(l, one())]);
    comp.insert((hpp, k), vec![(fpp, one())]);
    comp.insert((kp, hp), vec![(gp, one())]);
    comp.insert((fp, gpp), vec![(kpp, one())]);
    comp.insert((f, hpp), vec![(lp, one())]);
    comp.insert((gpp, kp), vec![(lp, one())]);
    PresCategory::new(field, "S", objects, arrows, comp)
}

fn build_e(field: Field) -> Result<PresCategory> {
    let objects: Vec<String> = ["A", "B", "C"].iter().map(|s| s.to_string()).collect();
    let arrows = vec![decl("f", 0, 1, 0), decl("g", 1, 2, 0), decl("h", 0, 2, 0)];
    let mut comp = BTreeMap::new();
    comp.insert((1usize, 0usize), vec![(2usize, field.one())]);
    PresCategory::new(field, "E", objects, arrows, comp)
}

fn build_eprime(field: Field) -> Result<PresCategory> {
    let objects: Vec<String> = ["O", "O(1)", "O(2)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut arrows = Vec::new();
    for i in 0..3 {
        arrows.push(decl(&format!("a{i}"), 0, 1, 0));
    }
    for i in 0..3 {
        arrows.push(decl(&format!("b{i}"), 1, 2, 0));
    }
    let mut c_index = BTreeMap::new();
    for i in 0..3usize {
        for j in i..3usize {
            c_index.insert((i, j), arrows.len());
            arrows.push(decl(&format!("c{i}{j}"), 0, 2, 0));
        }
    }
    let mut comp = BTreeMap::new();
    for i in 0..3usize {
        for j in 0..3usize {
            let key = if i <= j { (i, j) } else { (j, i) };
            // b_j . a_i = c_{ij}, symmetric in (i, j)
            comp.insert((3 + j, i), vec![(c_index[&key], field.one())]);
        }
    }
    PresCategory::new(field, "E'", objects, arrows, comp)
}
