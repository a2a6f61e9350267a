//! Linear functors out of presented categories: presentation-to-presentation
//! functors (with composition and the retraction check), and the functor
//! from the octahedron category to the homotopy category defined by a good
//! octahedron.

use std::collections::BTreeMap;

use super::{PresCategory, SArrows, SBasis, SMorphism, SumObject};
use crate::exactalg::{Field, Scalar};
use crate::homcat::{HomMatrix, PObject};
use crate::tri::{validate_octahedron, Octahedron, OctahedronReport, SearchPolicy};
use crate::{Error, Result};

/// A `K`-linear functor between two presented categories, given on objects
/// and basis arrows (images are combinations of target basis morphisms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresFunctor {
    pub name: String,
    pub obj_map: Vec<usize>,
    pub arrow_map: Vec<Vec<(SBasis, Scalar)>>,
}

fn normalize(field: Field, combo: Vec<(SBasis, Scalar)>) -> BTreeMap<SBasis, Scalar> {
    let mut out: BTreeMap<SBasis, Scalar> = BTreeMap::new();
    for (b, c) in combo {
        let e = out.entry(b).or_insert_with(|| field.zero());
        *e = field.add(e, &c);
    }
    out.retain(|_, v| !field.is_zero(v));
    out
}

/// Maps a source basis element through the functor.
fn image_of_basis(f: &PresFunctor, field: Field, b: SBasis) -> Vec<(SBasis, Scalar)> {
    match b {
        SBasis::Id(x) => vec![(SBasis::Id(f.obj_map[x]), field.one())],
        SBasis::Arrow(x) => f.arrow_map[x].clone(),
    }
}

/// True iff the functor data is endpoint-consistent and preserves
/// identities and every basis composition.
pub fn check_pres_functor(
    field: Field,
    src_cat: &PresCategory,
    tgt_cat: &PresCategory,
    f: &PresFunctor,
) -> bool {
    if f.obj_map.len() != src_cat.objects.len() || f.arrow_map.len() != src_cat.arrows.len() {
        return false;
    }
    for (x, decl) in src_cat.arrows.iter().enumerate() {
        let want_src = f.obj_map[decl.src];
        let want_tgt = f.obj_map[decl.tgt];
        for (b, _) in &f.arrow_map[x] {
            let ok = match b {
                SBasis::Id(o) => *o == want_src && want_src == want_tgt && decl.degree == 0,
                SBasis::Arrow(a) => {
                    let d = &tgt_cat.arrows[*a];
                    d.src == want_src && d.tgt == want_tgt && d.degree == decl.degree
                }
            };
            if !ok {
                return false;
            }
        }
    }
    // composition preservation on all composable arrow pairs
    for (x1, d1) in src_cat.arrows.iter().enumerate() {
        for (x2, d2) in src_cat.arrows.iter().enumerate() {
            if d2.src != d1.tgt {
                continue;
            }
            // F(x2 . x1)
            let mut lhs = Vec::new();
            for (y, c) in src_cat.compose_arrows(x2, x1) {
                for (b, c2) in image_of_basis(f, field, SBasis::Arrow(y)) {
                    lhs.push((b, field.mul(&c, &c2)));
                }
            }
            // F(x2) . F(x1)
            let mut rhs = Vec::new();
            for (b1, c1) in image_of_basis(f, field, SBasis::Arrow(x1)) {
                for (b2, c2) in image_of_basis(f, field, SBasis::Arrow(x2)) {
                    for (b, c) in tgt_cat.compose_basis(field, b2, b1) {
                        rhs.push((b, field.mul(&field.mul(&c1, &c2), &c)));
                    }
                }
            }
            if normalize(field, lhs) != normalize(field, rhs) {
                return false;
            }
        }
    }
    true
}

/// `g . f` as a functor (apply `f`, then `g`).
pub fn compose_pres_functors(field: Field, g: &PresFunctor, f: &PresFunctor) -> PresFunctor {
    let obj_map = f.obj_map.iter().map(|&x| g.obj_map[x]).collect();
    let arrow_map = f
        .arrow_map
        .iter()
        .map(|combo| {
            let mut out = Vec::new();
            for (b, c) in combo {
                for (b2, c2) in image_of_basis(g, field, *b) {
                    out.push((b2, field.mul(c, &c2)));
                }
            }
            normalize(field, out).into_iter().collect()
        })
        .collect();
    PresFunctor {
        name: format!("{}.{}", g.name, f.name),
        obj_map,
        arrow_map,
    }
}

pub fn identity_functor(cat: &PresCategory, field: Field) -> PresFunctor {
    PresFunctor {
        name: format!("id_{}", cat.name),
        obj_map: (0..cat.objects.len()).collect(),
        arrow_map: (0..cat.arrows.len())
            .map(|x| vec![(SBasis::Arrow(x), field.one())])
            .collect(),
    }
}

/// Functor equality on the nose (objects and normalized arrow images).
pub fn pres_functors_equal(field: Field, a: &PresFunctor, b: &PresFunctor) -> bool {
    a.obj_map == b.obj_map
        && a.arrow_map.len() == b.arrow_map.len()
        && a.arrow_map
            .iter()
            .zip(&b.arrow_map)
            .all(|(x, y)| normalize(field, x.clone()) == normalize(field, y.clone()))
}

/// The section and retraction between the three-object quiver fragment and
/// the plane fragment: `section . arrows = (a0, b0, c00)`, the retraction
/// keeps only the `0`-indexed generators.
pub fn beilinson_functors(
    field: Field,
    e_cat: &PresCategory,
    eprime_cat: &PresCategory,
) -> (PresFunctor, PresFunctor) {
    let a = |name: &str| SBasis::Arrow(eprime_cat.arrow_index(name));
    let section = PresFunctor {
        name: "S".into(),
        obj_map: vec![0, 1, 2],
        arrow_map: vec![
            vec![(a("a0"), field.one())],
            vec![(a("b0"), field.one())],
            vec![(a("c00"), field.one())],
        ],
    };
    let mut arrow_map = vec![Vec::new(); eprime_cat.arrows.len()];
    arrow_map[eprime_cat.arrow_index("a0")] =
        vec![(SBasis::Arrow(e_cat.arrow_index("f")), field.one())];
    arrow_map[eprime_cat.arrow_index("b0")] =
        vec![(SBasis::Arrow(e_cat.arrow_index("g")), field.one())];
    arrow_map[eprime_cat.arrow_index("c00")] =
        vec![(SBasis::Arrow(e_cat.arrow_index("h")), field.one())];
    let retraction = PresFunctor {
        name: "R".into(),
        obj_map: vec![0, 1, 2],
        arrow_map,
    };
    (section, retraction)
}

/// The functor from the octahedron category to the homotopy category
/// defined by a good octahedron: objects to the octahedron's objects,
/// arrows to its morphisms, extended additively and shift-equivariantly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctFunctor {
    /// Images of the six objects, indexed like the category's objects.
    pub obj_images: Vec<PObject>,
    /// Images of the basis arrows, indexed like the category's arrows.
    pub arrow_images: Vec<HomMatrix>,
}

impl OctFunctor {
    pub fn object_image(&self, obj: usize, shift: i64) -> PObject {
        self.obj_images[obj].shifted(shift)
    }

    pub fn arrow_image(&self, arrow: usize, shift: i64) -> HomMatrix {
        self.arrow_images[arrow].shifted(shift)
    }

    /// Additive extension to formal sums: the image object concatenates one
    /// shifted copy of the class image per multiplicity, classes in their
    /// canonical order.
    pub fn apply_object(&self, obj: &SumObject) -> PObject {
        let mut out = PObject::zero();
        for ((x, n), mult) in obj.classes() {
            for _ in 0..mult {
                out = out.direct_sum(&self.object_image(x, n));
            }
        }
        out
    }

    /// Additive extension to morphisms of formal sums: identity components
    /// become scaled identities of the class image, arrow components become
    /// scaled shifted arrow images.
    pub fn apply_morphism(
        &self,
        field: Field,
        cat: &PresCategory,
        u: &SMorphism,
    ) -> HomMatrix {
        let src = self.apply_object(&u.src);
        let tgt = self.apply_object(&u.tgt);
        // summand offset of copy `i` of class `(x, n)` inside the image
        let offsets = |obj: &SumObject| -> std::collections::BTreeMap<(usize, i64), (usize, usize)> {
            let mut map = std::collections::BTreeMap::new();
            let mut at = 0usize;
            for ((x, n), mult) in obj.classes() {
                let width = self.obj_images[x].len();
                map.insert((x, n), (at, width));
                at += width * mult;
            }
            map
        };
        let src_off = offsets(&u.src);
        let tgt_off = offsets(&u.tgt);

        let mut out = HomMatrix::zero(src.clone(), tgt.clone());
        let add_block =
            |block: &HomMatrix, row0: usize, col0: usize, out: &mut HomMatrix| {
                for r in 0..block.tgt.summands.len() {
                    for c in 0..block.src.summands.len() {
                        let sum = out
                            .entry(row0 + r, col0 + c)
                            .add(field, block.entry(r, c));
                        out.set_entry(row0 + r, col0 + c, sum);
                    }
                }
            };
        for (&class, m) in u.stored_iparts() {
            let image = HomMatrix::identity(field, &self.object_image(class.0, class.1));
            let (src_base, width) = src_off[&class];
            let (tgt_base, _) = tgt_off[&class];
            for r in 0..m.rows {
                for c in 0..m.cols {
                    let coeff = m.get(r, c);
                    if field.is_zero(coeff) {
                        continue;
                    }
                    let scaled = image.scale(field, coeff);
                    add_block(&scaled, tgt_base + r * width, src_base + c * width, &mut out);
                }
            }
        }
        for (&(arrow, n), m) in u.stored_aparts() {
            let decl = &cat.arrows[arrow];
            let image = self.arrow_image(arrow, n);
            let (src_base, src_width) = src_off[&(decl.src, n)];
            let (tgt_base, tgt_width) = tgt_off[&(decl.tgt, n + decl.degree)];
            for r in 0..m.rows {
                for c in 0..m.cols {
                    let coeff = m.get(r, c);
                    if field.is_zero(coeff) {
                        continue;
                    }
                    let scaled = image.scale(field, coeff);
                    add_block(
                        &scaled,
                        tgt_base + r * tgt_width,
                        src_base + c * src_width,
                        &mut out,
                    );
                }
            }
        }
        out
    }
}

/// Builds the functor defined by `o`, after verifying the octahedron is
/// good; the returned report carries the goodness certification.
pub fn functor_from_octahedron(
    field: Field,
    cat: &PresCategory,
    ids: &SArrows,
    o: &Octahedron,
    policy: &SearchPolicy,
) -> Result<(OctFunctor, OctahedronReport)> {
    let report = validate_octahedron(field, o, policy)?;
    if !report.good {
        return Err(Error::Precondition(
            "functor construction requires a certified good octahedron".into(),
        ));
    }
    let mut obj_images = vec![PObject::zero(); cat.objects.len()];
    obj_images[ids.a] = o.a.clone();
    obj_images[ids.b] = o.b.clone();
    obj_images[ids.c] = o.c.clone();
    obj_images[ids.d] = o.d.clone();
    obj_images[ids.e] = o.e.clone();
    obj_images[ids.f_obj] = o.f_obj.clone();
    let mut arrow_images =
        vec![HomMatrix::zero(PObject::zero(), PObject::zero()); cat.arrows.len()];
    arrow_images[ids.f] = o.f.clone();
    arrow_images[ids.g] = o.g.clone();
    arrow_images[ids.h] = o.h.clone();
    arrow_images[ids.fp] = o.fp.clone();
    arrow_images[ids.gp] = o.gp.clone();
    arrow_images[ids.hp] = o.hp.clone();
    arrow_images[ids.fpp] = o.fpp.clone();
    arrow_images[ids.gpp] = o.gpp.clone();
    arrow_images[ids.hpp] = o.hpp.clone();
    arrow_images[ids.k] = o.k.clone();
    arrow_images[ids.kp] = o.kp.clone();
    arrow_images[ids.kpp] = o.kpp.clone();
    arrow_images[ids.l] = o.l.clone();
    arrow_images[ids.lp] = o.lp.clone();
    let functor = OctFunctor {
        obj_images,
        arrow_images,
    };
    if !check_oct_functor(field, cat, &functor) {
        return Err(Error::Validation(
            "octahedron data does not define a functor".into(),
        ));
    }
    Ok((functor, report))
}

/// True iff arrow images have the right endpoints and every composable pair
/// of basis arrows maps compatibly (zero composites included).
pub fn check_oct_functor(field: Field, cat: &PresCategory, f: &OctFunctor) -> bool {
    for (x, decl) in cat.arrows.iter().enumerate() {
        let img = &f.arrow_images[x];
        if img.src != f.obj_images[decl.src]
            || img.tgt != f.obj_images[decl.tgt].shifted(decl.degree)
        {
            return false;
        }
    }
    for (x1, d1) in cat.arrows.iter().enumerate() {
        for (x2, d2) in cat.arrows.iter().enumerate() {
            if d2.src != d1.tgt {
                continue;
            }
            // F(x2)[deg x1] . F(x1)
            let lhs = HomMatrix::compose(field, &f.arrow_image(x2, d1.degree), &f.arrow_images[x1])
                .expect("endpoints checked above");
            // F(x2 . x1)
            let mut rhs = HomMatrix::zero(lhs.src.clone(), lhs.tgt.clone());
            for (y, c) in cat.compose_arrows(x2, x1) {
                rhs = rhs.add(field, &f.arrow_images[y].scale(field, &c));
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Restriction agreement of two functors on a set of objects and arrows.
pub fn functors_agree_on(
    a: &OctFunctor,
    b: &OctFunctor,
    objects: &[usize],
    arrows: &[usize],
) -> bool {
    objects.iter().all(|&o| a.obj_images[o] == b.obj_images[o])
        && arrows
            .iter()
            .all(|&x| a.arrow_images[x] == b.arrow_images[x])
}
