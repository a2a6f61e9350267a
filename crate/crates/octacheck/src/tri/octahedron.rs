//! Octahedra: the six objects and fourteen morphisms extending a composable
//! pair, validity (commutation relations plus four distinguished triangles),
//! goodness (two more distinguished triangles), the uniqueness-based
//! sufficient criterion, epsilon-deformation, and the built-in pair of good
//! octahedra on `P_3 --x--> P_3 --x--> P_3`.

use super::{is_distinguished, SearchPolicy, Triangle, Verdict};
use crate::exactalg::{Field, LinearSystem, Scalar};
use crate::homcat::{BasisMor, HomElement, HomMatrix, HomUnknowns, PObject, Summand};
use crate::{Error, Result};

/// The commutative diagram of an octahedron.
///
/// Shapes: `f: A -> B`, `g: B -> C`, `h: A -> C`, `fp: B -> D`,
/// `fpp: D -> A[1]`, `hp: C -> E`, `hpp: E -> A[1]`, `gp: C -> F`,
/// `gpp: F -> B[1]`, `k: D -> E`, `kp: E -> F`, `kpp: F -> D[1]`,
/// `l: B -> E`, `lp: E -> B[1]`. Primes are written `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Octahedron {
    pub a: PObject,
    pub b: PObject,
    pub c: PObject,
    pub d: PObject,
    pub e: PObject,
    pub f_obj: PObject,
    pub f: HomMatrix,
    pub g: HomMatrix,
    pub h: HomMatrix,
    pub fp: HomMatrix,
    pub fpp: HomMatrix,
    pub hp: HomMatrix,
    pub hpp: HomMatrix,
    pub gp: HomMatrix,
    pub gpp: HomMatrix,
    pub k: HomMatrix,
    pub kp: HomMatrix,
    pub kpp: HomMatrix,
    pub l: HomMatrix,
    pub lp: HomMatrix,
}

impl Octahedron {
    /// Validates every endpoint against the six objects.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        f: HomMatrix,
        g: HomMatrix,
        h: HomMatrix,
        fp: HomMatrix,
        fpp: HomMatrix,
        hp: HomMatrix,
        hpp: HomMatrix,
        gp: HomMatrix,
        gpp: HomMatrix,
        k: HomMatrix,
        kp: HomMatrix,
        kpp: HomMatrix,
        l: HomMatrix,
        lp: HomMatrix,
    ) -> Result<Octahedron> {
        let a = f.src.clone();
        let b = f.tgt.clone();
        let c = g.tgt.clone();
        let d = fp.tgt.clone();
        let e = hp.tgt.clone();
        let f_obj = gp.tgt.clone();
        let expect = |name: &str, got: (&PObject, &PObject), want: (&PObject, &PObject)| {
            if got.0 != want.0 || got.1 != want.1 {
                Err(Error::Domain(format!(
                    "octahedron: {name} has wrong endpoints"
                )))
            } else {
                Ok(())
            }
        };
        let a1 = a.shifted(1);
        let b1 = b.shifted(1);
        let d1 = d.shifted(1);
        expect("g", (&g.src, &g.tgt), (&b, &c))?;
        expect("h", (&h.src, &h.tgt), (&a, &c))?;
        expect("f'", (&fp.src, &fp.tgt), (&b, &d))?;
        expect("f''", (&fpp.src, &fpp.tgt), (&d, &a1))?;
        expect("h'", (&hp.src, &hp.tgt), (&c, &e))?;
        expect("h''", (&hpp.src, &hpp.tgt), (&e, &a1))?;
        expect("g'", (&gp.src, &gp.tgt), (&c, &f_obj))?;
        expect("g''", (&gpp.src, &gpp.tgt), (&f_obj, &b1))?;
        expect("k", (&k.src, &k.tgt), (&d, &e))?;
        expect("k'", (&kp.src, &kp.tgt), (&e, &f_obj))?;
        expect("k''", (&kpp.src, &kpp.tgt), (&f_obj, &d1))?;
        expect("l", (&l.src, &l.tgt), (&b, &e))?;
        expect("l'", (&lp.src, &lp.tgt), (&e, &b1))?;
        Ok(Octahedron {
            a,
            b,
            c,
            d,
            e,
            f_obj,
            f,
            g,
            h,
            fp,
            fpp,
            hp,
            hpp,
            gp,
            gpp,
            k,
            kp,
            kpp,
            l,
            lp,
        })
    }

    /// Names of the commutation relations that fail to hold.
    pub fn relation_violations(&self, field: Field) -> Vec<String> {
        let comp = |g: &HomMatrix, f: &HomMatrix| HomMatrix::compose(field, g, f).unwrap();
        let mut bad = Vec::new();
        let mut check = |name: &str, lhs: HomMatrix, rhs: &HomMatrix| {
            if &lhs != rhs {
                bad.push(name.to_string());
            }
        };
        check("h = g.f", comp(&self.g, &self.f), &self.h);
        check("f'' = h''.k", comp(&self.hpp, &self.k), &self.fpp);
        check("g' = k'.h'", comp(&self.kp, &self.hp), &self.gp);
        check(
            "k'' = f'[1].g''",
            comp(&self.fp.shifted(1), &self.gpp),
            &self.kpp,
        );
        check("l = h'.g", comp(&self.hp, &self.g), &self.l);
        check("l = k.f'", comp(&self.k, &self.fp), &self.l);
        check(
            "l' = f[1].h''",
            comp(&self.f.shifted(1), &self.hpp),
            &self.lp,
        );
        check("l' = g''.k'", comp(&self.gpp, &self.kp), &self.lp);
        let zero_bc = |src: &PObject, tgt: &PObject| HomMatrix::zero(src.clone(), tgt.clone());
        check(
            "f'.f = 0",
            comp(&self.fp, &self.f),
            &zero_bc(&self.a, &self.d),
        );
        check(
            "h''.h' = 0",
            comp(&self.hpp, &self.hp),
            &zero_bc(&self.c, &self.a.shifted(1)),
        );
        check(
            "g[1].g'' = 0",
            comp(&self.g.shifted(1), &self.gpp),
            &zero_bc(&self.f_obj, &self.c.shifted(1)),
        );
        check(
            "k'.k = 0",
            comp(&self.kp, &self.k),
            &zero_bc(&self.d, &self.f_obj),
        );
        bad
    }

    pub fn tri1(&self) -> Triangle {
        Triangle::new(self.f.clone(), self.fp.clone(), self.fpp.clone()).unwrap()
    }

    pub fn tri2(&self) -> Triangle {
        Triangle::new(self.h.clone(), self.hp.clone(), self.hpp.clone()).unwrap()
    }

    pub fn tri3(&self) -> Triangle {
        Triangle::new(self.g.clone(), self.gp.clone(), self.gpp.clone()).unwrap()
    }

    pub fn tri4(&self) -> Triangle {
        Triangle::new(self.k.clone(), self.kp.clone(), self.kpp.clone()).unwrap()
    }

    /// `B --l--> E --(k'; -h'')--> F (+) A[1] --(g'', f[1])--> B[1]`.
    pub fn tri5(&self, field: Field) -> Triangle {
        let second = HomMatrix::vstack(&[&self.kp, &self.hpp.neg(field)]);
        let third = HomMatrix::hstack(&[&self.gpp, &self.f.shifted(1)]);
        Triangle::new(self.l.clone(), second, third).unwrap()
    }

    /// `B --(g; f')--> C (+) D --(h', -k)--> E --l'--> B[1]`.
    pub fn tri6(&self, field: Field) -> Triangle {
        let first = HomMatrix::vstack(&[&self.g, &self.fp]);
        let second = HomMatrix::hstack(&[&self.hp, &self.k.neg(field)]);
        Triangle::new(first, second, self.lp.clone()).unwrap()
    }
}

/// Pointwise validity and goodness report.
#[derive(Clone, Debug)]
pub struct OctahedronReport {
    pub relation_violations: Vec<String>,
    /// Verdicts for the four defining triangles and the two goodness
    /// triangles, in order.
    pub triangle_verdicts: Vec<(String, Verdict)>,
    pub valid: bool,
    pub good: bool,
    /// True when some verdict was `Inconclusive`, so `valid`/`good` being
    /// false is not a refutation.
    pub inconclusive: bool,
}

/// Checks the commutation relations and certifies the six triangles.
pub fn validate_octahedron(
    field: Field,
    o: &Octahedron,
    policy: &SearchPolicy,
) -> Result<OctahedronReport> {
    let relation_violations = o.relation_violations(field);
    let triangles = vec![
        ("tri1".to_string(), o.tri1()),
        ("tri2".to_string(), o.tri2()),
        ("tri3".to_string(), o.tri3()),
        ("tri4".to_string(), o.tri4()),
        ("tri5".to_string(), o.tri5(field)),
        ("tri6".to_string(), o.tri6(field)),
    ];
    let mut triangle_verdicts = Vec::new();
    for (name, t) in triangles {
        let rep = is_distinguished(field, &t, policy)?;
        triangle_verdicts.push((name, rep.verdict));
    }
    let yes = |idx: usize| matches!(triangle_verdicts[idx].1, Verdict::CertifiedYes);
    let valid = relation_violations.is_empty() && (0..4).all(yes);
    let good = valid && yes(4) && yes(5);
    let inconclusive = triangle_verdicts
        .iter()
        .any(|(_, v)| matches!(v, Verdict::Inconclusive));
    Ok(OctahedronReport {
        relation_violations,
        triangle_verdicts,
        valid,
        good,
        inconclusive,
    })
}

/// The four uniqueness conditions of the sufficient goodness criterion:
/// `k'` unique with `k'.h' = g'`, `f[1]` unique with `g[1].f[1] = h[1]`,
/// `g` unique with `g.f = h`, `k` unique with `h''.k = f''`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniquenessReport {
    pub kp_unique: bool,
    pub shifted_f_unique: bool,
    pub g_unique: bool,
    pub k_unique: bool,
}

impl UniquenessReport {
    pub fn all_unique(&self) -> bool {
        self.kp_unique && self.shifted_f_unique && self.g_unique && self.k_unique
    }
}

/// Evaluates the four uniqueness conditions as zero-dimensionality of the
/// corresponding affine solution spaces. All four true implies the
/// octahedron is good.
pub fn goodness_by_uniqueness(field: Field, o: &Octahedron) -> Result<UniquenessReport> {
    // u . pre = rhs, unknown u
    let post_space = |src: &PObject,
                      tgt: &PObject,
                      pre: &HomMatrix,
                      rhs: &HomMatrix,
                      known: &HomMatrix|
     -> Result<bool> {
        let unknowns = HomUnknowns::new(src, tgt);
        let eq = HomUnknowns::new(&pre.src, tgt);
        let mut sys = LinearSystem::new(unknowns.len());
        let mut cols = Vec::new();
        for kx in 0..unknowns.len() {
            cols.push(eq.coeffs_of(
                field,
                &HomMatrix::compose(field, &unknowns.unit(field, kx), pre)?,
            ));
        }
        for (slot, rhs_c) in eq.coeffs_of(field, rhs).iter().enumerate() {
            let lhs: Vec<(usize, Scalar)> = cols
                .iter()
                .enumerate()
                .filter_map(|(kx, col)| {
                    (!field.is_zero(&col[slot])).then(|| (kx, col[slot].clone()))
                })
                .collect();
            sys.add_equation(lhs, rhs_c.clone());
        }
        let space = sys.solve_affine(field);
        if !space.contains(field, &unknowns.coeffs_of(field, known)) {
            return Err(Error::Precondition(
                "uniqueness check on an octahedron whose relations fail".into(),
            ));
        }
        Ok(space.dim() == 0)
    };
    // post . u = rhs, unknown u
    let pre_space = |src: &PObject,
                     tgt: &PObject,
                     post: &HomMatrix,
                     rhs: &HomMatrix,
                     known: &HomMatrix|
     -> Result<bool> {
        let unknowns = HomUnknowns::new(src, tgt);
        let eq = HomUnknowns::new(src, &post.tgt);
        let mut sys = LinearSystem::new(unknowns.len());
        let mut cols = Vec::new();
        for kx in 0..unknowns.len() {
            cols.push(eq.coeffs_of(
                field,
                &HomMatrix::compose(field, post, &unknowns.unit(field, kx))?,
            ));
        }
        for (slot, rhs_c) in eq.coeffs_of(field, rhs).iter().enumerate() {
            let lhs: Vec<(usize, Scalar)> = cols
                .iter()
                .enumerate()
                .filter_map(|(kx, col)| {
                    (!field.is_zero(&col[slot])).then(|| (kx, col[slot].clone()))
                })
                .collect();
            sys.add_equation(lhs, rhs_c.clone());
        }
        let space = sys.solve_affine(field);
        if !space.contains(field, &unknowns.coeffs_of(field, known)) {
            return Err(Error::Precondition(
                "uniqueness check on an octahedron whose relations fail".into(),
            ));
        }
        Ok(space.dim() == 0)
    };

    let kp_unique = post_space(&o.e, &o.f_obj, &o.hp, &o.gp, &o.kp)?;
    let shifted_f = o.f.shifted(1);
    let shifted_f_unique = pre_space(
        &o.a.shifted(1),
        &o.b.shifted(1),
        &o.g.shifted(1),
        &o.h.shifted(1),
        &shifted_f,
    )?;
    let g_unique = post_space(&o.b, &o.c, &o.f, &o.h, &o.g)?;
    let k_unique = pre_space(&o.d, &o.e, &o.hpp, &o.fpp, &o.k)?;
    Ok(UniquenessReport {
        kp_unique,
        shifted_f_unique,
        g_unique,
        k_unique,
    })
}

fn is_nilpotent(field: Field, u: &HomMatrix) -> bool {
    if u.src != u.tgt {
        return false;
    }
    let cap = 2 * u.src.summands.iter().map(|s| s.n).sum::<usize>() + 4;
    let mut power = u.clone();
    for _ in 0..cap {
        if power.is_zero() {
            return true;
        }
        power = HomMatrix::compose(field, &power, u).unwrap();
    }
    false
}

/// Replaces `k`, `k'` by `(1+eps).k`, `k'.(1-eps)` after checking the
/// deformation identities. The optional `eps'`, `eps''` are only validated:
/// when they satisfy their identities and the input is good, the deformed
/// octahedron is good as well.
pub fn epsilon_deform(
    field: Field,
    o: &Octahedron,
    eps: &HomMatrix,
    eps_prime: Option<&HomMatrix>,
    eps_second: Option<&HomMatrix>,
) -> Result<Octahedron> {
    if eps.src != o.e || eps.tgt != o.e {
        return Err(Error::Domain("eps must be an endomorphism of E".into()));
    }
    let comp = |g: &HomMatrix, f: &HomMatrix| HomMatrix::compose(field, g, f).unwrap();
    let fail = |name: &str| Err(Error::Precondition(format!("deformation identity {name}")));
    if !comp(eps, eps).is_zero() {
        return fail("eps.eps = 0");
    }
    if !comp(eps, &o.l).is_zero() {
        return fail("eps.l = 0");
    }
    if !comp(&o.lp, eps).is_zero() {
        return fail("l'.eps = 0");
    }
    if !comp(&o.hpp, &comp(eps, &o.k)).is_zero() {
        return fail("h''.eps.k = 0");
    }
    if !comp(&o.kp, &comp(eps, &o.hp)).is_zero() {
        return fail("k'.eps.h' = 0");
    }
    if let Some(ep) = eps_prime {
        if ep.src != o.e || ep.tgt != o.e {
            return Err(Error::Domain("eps' must be an endomorphism of E".into()));
        }
        if !is_nilpotent(field, ep) {
            return fail("eps' nilpotent");
        }
        if !comp(ep, &o.l).is_zero() {
            return fail("eps'.l = 0");
        }
        if !comp(&o.hpp, ep).is_zero() {
            return fail("h''.eps' = 0");
        }
        if !comp(&o.kp, &ep.sub(field, eps)).is_zero() {
            return fail("k'.(eps' - eps) = 0");
        }
    }
    if let Some(es) = eps_second {
        if es.src != o.e || es.tgt != o.e {
            return Err(Error::Domain("eps'' must be an endomorphism of E".into()));
        }
        if !is_nilpotent(field, es) {
            return fail("eps'' nilpotent");
        }
        if !comp(&o.lp, es).is_zero() {
            return fail("l'.eps'' = 0");
        }
        if !comp(es, &o.hp).is_zero() {
            return fail("eps''.h' = 0");
        }
        if !comp(&es.sub(field, eps), &o.k).is_zero() {
            return fail("(eps'' - eps).k = 0");
        }
    }

    let one_plus = HomMatrix::identity(field, &o.e).add(field, eps);
    let one_minus = HomMatrix::identity(field, &o.e).sub(field, eps);
    let k_new = comp(&one_plus, &o.k);
    let kp_new = comp(&o.kp, &one_minus);
    let deformed = Octahedron {
        k: k_new,
        kp: kp_new,
        ..o.clone()
    };
    // the deformation identities make all commutation relations carry over
    let violations = deformed.relation_violations(field);
    assert!(
        violations.is_empty(),
        "deformed octahedron lost relations: {violations:?}"
    );
    Ok(deformed)
}

fn el_x(field: Field, coeff: i64, i: usize, src: Summand, tgt: Summand) -> HomElement {
    HomElement::from_basis(field, &BasisMor::x(i, src, tgt), field.from_i64(coeff))
}

fn el_y(field: Field, coeff: i64, i: usize, src: Summand, tgt: Summand) -> HomElement {
    HomElement::from_basis(field, &BasisMor::y(i, src, tgt), field.from_i64(coeff))
}

/// The two built-in good octahedra extending
/// `P_3 --x--> P_3 --x--> P_3`; they differ only in `k`, `k'` and are not
/// isomorphic over any field.
pub fn builtin_octahedra(field: Field) -> (Octahedron, Octahedron) {
    let p3 = PObject::single(3, 0);
    let df = PObject::from_summands(vec![(1, 1), (1, 0)]);
    let e = PObject::from_summands(vec![(2, 1), (2, 0)]);

    let s3 = Summand::new(3, 0);
    let s3_1 = Summand::new(3, 1);
    let s1_1 = Summand::new(1, 1);
    let s1_0 = Summand::new(1, 0);
    let s1_2 = Summand::new(1, 2);
    let s2_1 = Summand::new(2, 1);
    let s2_0 = Summand::new(2, 0);

    let single = |el: HomElement| -> HomMatrix {
        let src = PObject {
            summands: vec![el.src],
        };
        let tgt = PObject {
            summands: vec![el.tgt],
        };
        HomMatrix::from_grid(src, tgt, vec![vec![el]]).unwrap()
    };

    let f = single(el_x(field, 1, 1, s3, s3));
    let g = f.clone();
    let h = single(el_x(field, 1, 2, s3, s3));

    let fp = HomMatrix::from_grid(
        p3.clone(),
        df.clone(),
        vec![
            vec![el_y(field, 1, 3, s3, s1_1)],
            vec![el_x(field, 1, 0, s3, s1_0)],
        ],
    )
    .unwrap();
    let gp = fp.clone();

    let hp = HomMatrix::from_grid(
        p3.clone(),
        e.clone(),
        vec![
            vec![el_y(field, 1, 3, s3, s2_1)],
            vec![el_x(field, 1, 0, s3, s2_0)],
        ],
    )
    .unwrap();

    let fpp = HomMatrix::from_grid(
        df.clone(),
        p3.shifted(1),
        vec![vec![
            el_x(field, -1, 2, s1_1, s3_1),
            el_y(field, 1, 1, s1_0, s3_1),
        ]],
    )
    .unwrap();
    let gpp = fpp.clone();

    let hpp = HomMatrix::from_grid(
        e.clone(),
        p3.shifted(1),
        vec![vec![
            el_x(field, -1, 1, s2_1, s3_1),
            el_y(field, 1, 2, s2_0, s3_1),
        ]],
    )
    .unwrap();

    let k = HomMatrix::from_grid(
        df.clone(),
        e.clone(),
        vec![
            vec![el_x(field, 1, 1, s1_1, s2_1), HomElement::zero(s1_0, s2_1)],
            vec![HomElement::zero(s1_1, s2_0), el_x(field, 1, 1, s1_0, s2_0)],
        ],
    )
    .unwrap();
    let kp = HomMatrix::from_grid(
        e.clone(),
        df.clone(),
        vec![
            vec![el_x(field, 1, 0, s2_1, s1_1), HomElement::zero(s2_0, s1_1)],
            vec![HomElement::zero(s2_1, s1_0), el_x(field, 1, 0, s2_0, s1_0)],
        ],
    )
    .unwrap();
    let kpp = HomMatrix::from_grid(
        df.clone(),
        df.shifted(1),
        vec![
            vec![el_y(field, -1, 1, s1_1, s1_2), HomElement::zero(s1_0, s1_2)],
            vec![HomElement::zero(s1_1, s1_1), el_y(field, 1, 1, s1_0, s1_1)],
        ],
    )
    .unwrap();

    let l = HomMatrix::from_grid(
        p3.clone(),
        e.clone(),
        vec![
            vec![el_y(field, 1, 2, s3, s2_1)],
            vec![el_x(field, 1, 1, s3, s2_0)],
        ],
    )
    .unwrap();
    let lp = HomMatrix::from_grid(
        e.clone(),
        p3.shifted(1),
        vec![vec![
            el_x(field, -1, 2, s2_1, s3_1),
            el_y(field, 1, 1, s2_0, s3_1),
        ]],
    )
    .unwrap();

    let first = Octahedron::new(
        f.clone(),
        g.clone(),
        h.clone(),
        fp.clone(),
        fpp.clone(),
        hp.clone(),
        hpp.clone(),
        gp.clone(),
        gpp.clone(),
        k,
        kp,
        kpp.clone(),
        l.clone(),
        lp.clone(),
    )
    .expect("built-in octahedron endpoints");

    let k_tilde = HomMatrix::from_grid(
        df.clone(),
        e.clone(),
        vec![
            vec![el_x(field, 1, 1, s1_1, s2_1), el_y(field, 1, 1, s1_0, s2_1)],
            vec![HomElement::zero(s1_1, s2_0), el_x(field, 1, 1, s1_0, s2_0)],
        ],
    )
    .unwrap();
    let kp_tilde = HomMatrix::from_grid(
        e,
        df,
        vec![
            vec![
                el_x(field, 1, 0, s2_1, s1_1),
                el_y(field, -1, 2, s2_0, s1_1),
            ],
            vec![HomElement::zero(s2_1, s1_0), el_x(field, 1, 0, s2_0, s1_0)],
        ],
    )
    .unwrap();

    let second = Octahedron::new(
        f, g, h, fp, fpp, hp, hpp, gp, gpp, k_tilde, kp_tilde, kpp, l, lp,
    )
    .expect("built-in octahedron endpoints");

    debug_assert!(first.relation_violations(field).is_empty());
    debug_assert!(second.relation_violations(field).is_empty());
    (first, second)
}

/// The deformation data carrying the first built-in octahedron to the
/// second: `eps`, `eps'`, `eps''` as endomorphisms of `E`.
pub fn builtin_deformation(field: Field) -> (HomMatrix, HomMatrix, HomMatrix) {
    let e = PObject::from_summands(vec![(2, 1), (2, 0)]);
    let s2_1 = Summand::new(2, 1);
    let s2_0 = Summand::new(2, 0);
    let eps = HomMatrix::from_grid(
        e.clone(),
        e.clone(),
        vec![
            vec![HomElement::zero(s2_1, s2_1), el_y(field, 1, 2, s2_0, s2_1)],
            vec![HomElement::zero(s2_1, s2_0), HomElement::zero(s2_0, s2_0)],
        ],
    )
    .unwrap();
    let eps_prime = HomMatrix::from_grid(
        e.clone(),
        e.clone(),
        vec![
            vec![HomElement::zero(s2_1, s2_1), el_y(field, 1, 2, s2_0, s2_1)],
            vec![HomElement::zero(s2_1, s2_0), el_x(field, 1, 1, s2_0, s2_0)],
        ],
    )
    .unwrap();
    let eps_second = HomMatrix::from_grid(
        e.clone(),
        e,
        vec![
            vec![
                el_x(field, -1, 1, s2_1, s2_1),
                el_y(field, 1, 2, s2_0, s2_1),
            ],
            vec![HomElement::zero(s2_1, s2_0), HomElement::zero(s2_0, s2_0)],
        ],
    )
    .unwrap();
    (eps, eps_prime, eps_second)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_octahedra_satisfy_all_relations() {
        for field in [Field::Q, Field::fp(2).unwrap(), Field::fp(5).unwrap()] {
            let (o1, o2) = builtin_octahedra(field);
            assert!(o1.relation_violations(field).is_empty());
            assert!(o2.relation_violations(field).is_empty());
        }
    }

    #[test]
    fn breaking_kpp_breaks_relations() {
        let field = Field::Q;
        let (mut o1, _) = builtin_octahedra(field);
        o1.kpp = HomMatrix::zero(o1.f_obj.clone(), o1.d.shifted(1));
        let bad = o1.relation_violations(field);
        assert!(bad.iter().any(|s| s.contains("k''")));
    }

    #[test]
    fn mixing_deformed_and_undeformed_k_breaks_relations() {
        // the deformed k with the undeformed k' violates k'.k = 0
        let field = Field::Q;
        let (o1, o2) = builtin_octahedra(field);
        let mixed = Octahedron {
            k: o2.k.clone(),
            ..o1.clone()
        };
        let bad = mixed.relation_violations(field);
        assert!(bad.iter().any(|s| s.contains("k'.k")), "{bad:?}");
    }

    #[test]
    fn auxiliary_triangles_match_the_displayed_data() {
        // tri5 and tri6 of the first octahedron equal, entry for entry, the
        // two explicitly displayed three-term triangles
        let field = Field::Q;
        let (o1, _) = builtin_octahedra(field);
        let s3 = Summand::new(3, 0);
        let s3_1 = Summand::new(3, 1);
        let s1_1 = Summand::new(1, 1);
        let s1_0 = Summand::new(1, 0);
        let s2_1 = Summand::new(2, 1);
        let s2_0 = Summand::new(2, 0);
        let p3 = PObject::single(3, 0);
        let e = PObject::from_summands(vec![(2, 1), (2, 0)]);
        let mid5 = PObject::from_summands(vec![(1, 1), (1, 0), (3, 1)]);

        // first: P_3 --(y^2; x^1)--> P_2[1] + P_2
        let first5 = HomMatrix::from_grid(
            p3.clone(),
            e.clone(),
            vec![
                vec![el_y(field, 1, 2, s3, s2_1)],
                vec![el_x(field, 1, 1, s3, s2_0)],
            ],
        )
        .unwrap();
        // second: the 3x2 block (x^0, 0; 0, x^0; x^1, -y^2)
        let second5 = HomMatrix::from_grid(
            e.clone(),
            mid5.clone(),
            vec![
                vec![el_x(field, 1, 0, s2_1, s1_1), HomElement::zero(s2_0, s1_1)],
                vec![HomElement::zero(s2_1, s1_0), el_x(field, 1, 0, s2_0, s1_0)],
                vec![
                    el_x(field, 1, 1, s2_1, s3_1),
                    el_y(field, -1, 2, s2_0, s3_1),
                ],
            ],
        )
        .unwrap();
        // third: the row (-x^2, y^1, x^1)
        let third5 = HomMatrix::from_grid(
            mid5,
            p3.shifted(1),
            vec![vec![
                el_x(field, -1, 2, s1_1, s3_1),
                el_y(field, 1, 1, s1_0, s3_1),
                el_x(field, 1, 1, s3_1, s3_1),
            ]],
        )
        .unwrap();
        let t5 = o1.tri5(field);
        assert_eq!(t5.f, first5);
        assert_eq!(t5.g, second5);
        assert_eq!(t5.h, third5);

        // the lower triangle: P_3 --(x^1; y^3; x^0)--> P_3 + P_1[1] + P_1
        let mid6 = PObject::from_summands(vec![(3, 0), (1, 1), (1, 0)]);
        let first6 = HomMatrix::from_grid(
            p3.clone(),
            mid6.clone(),
            vec![
                vec![el_x(field, 1, 1, s3, s3)],
                vec![el_y(field, 1, 3, s3, s1_1)],
                vec![el_x(field, 1, 0, s3, s1_0)],
            ],
        )
        .unwrap();
        // (y^3, -x^1, 0; x^0, 0, -x^1)
        let second6 = HomMatrix::from_grid(
            mid6,
            e.clone(),
            vec![
                vec![
                    el_y(field, 1, 3, s3, s2_1),
                    el_x(field, -1, 1, s1_1, s2_1),
                    HomElement::zero(s1_0, s2_1),
                ],
                vec![
                    el_x(field, 1, 0, s3, s2_0),
                    HomElement::zero(s1_1, s2_0),
                    el_x(field, -1, 1, s1_0, s2_0),
                ],
            ],
        )
        .unwrap();
        // (-x^2, y^1)
        let third6 = HomMatrix::from_grid(
            e,
            p3.shifted(1),
            vec![vec![
                el_x(field, -1, 2, s2_1, s3_1),
                el_y(field, 1, 1, s2_0, s3_1),
            ]],
        )
        .unwrap();
        let t6 = o1.tri6(field);
        assert_eq!(t6.f, first6);
        assert_eq!(t6.g, second6);
        assert_eq!(t6.h, third6);
    }

    #[test]
    fn builtin_octahedra_are_valid_and_good() {
        let field = Field::fp(5).unwrap();
        let policy = SearchPolicy::default();
        let (o1, o2) = builtin_octahedra(field);
        for o in [&o1, &o2] {
            let rep = validate_octahedron(field, o, &policy).unwrap();
            assert!(rep.valid, "verdicts: {:?}", rep.triangle_verdicts);
            assert!(rep.good, "verdicts: {:?}", rep.triangle_verdicts);
        }
    }

    #[test]
    fn rotations_of_all_six_triangles_stay_certified() {
        let field = Field::fp(3).unwrap();
        let policy = SearchPolicy::default();
        let (o1, _) = builtin_octahedra(field);
        let triangles = [
            o1.tri1(),
            o1.tri2(),
            o1.tri3(),
            o1.tri4(),
            o1.tri5(field),
            o1.tri6(field),
        ];
        for (i, t) in triangles.iter().enumerate() {
            let rot = t.rotate(field);
            let rep = is_distinguished(field, &rot, &policy).unwrap();
            assert_eq!(
                rep.verdict,
                Verdict::CertifiedYes,
                "rotation of triangle {i}"
            );
        }
    }

    #[test]
    fn octahedron_on_zero_objects_is_vacuously_unique() {
        let field = Field::Q;
        let z = crate::homcat::PObject::zero;
        let zm = |a: crate::homcat::PObject, b: crate::homcat::PObject| HomMatrix::zero(a, b);
        let o = Octahedron::new(
            zm(z(), z()),
            zm(z(), z()),
            zm(z(), z()),
            zm(z(), z()),
            zm(z(), z()),
            zm(z(), z()),
            zm(z(), z()),
            zm(z(), z()),
            zm(z(), z()),
            zm(z(), z()),
            zm(z(), z()),
            zm(z(), z()),
            zm(z(), z()),
            zm(z(), z()),
        )
        .unwrap();
        assert!(o.relation_violations(field).is_empty());
        let uniq = goodness_by_uniqueness(field, &o).unwrap();
        assert!(uniq.all_unique());
        let rep = validate_octahedron(field, &o, &SearchPolicy::default()).unwrap();
        assert!(rep.valid && rep.good);
    }

    #[test]
    fn uniqueness_rejects_octahedra_with_broken_relations() {
        let field = Field::Q;
        let (mut o1, _) = builtin_octahedra(field);
        o1.gp = HomMatrix::zero(o1.c.clone(), o1.f_obj.clone());
        assert!(matches!(
            goodness_by_uniqueness(field, &o1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn uniqueness_pattern_is_field_independent() {
        let (q1, _) = builtin_octahedra(Field::Q);
        let rep_q = goodness_by_uniqueness(Field::Q, &q1).unwrap();
        for p in [2u64, 5] {
            let field = Field::fp(p).unwrap();
            let (o1, _) = builtin_octahedra(field);
            let rep = goodness_by_uniqueness(field, &o1).unwrap();
            assert_eq!(rep, rep_q);
        }
    }

    #[test]
    fn deformation_reproduces_the_second_octahedron() {
        for field in [Field::Q, Field::fp(3).unwrap()] {
            let (o1, o2) = builtin_octahedra(field);
            let (eps, ep, es) = builtin_deformation(field);
            let deformed = epsilon_deform(field, &o1, &eps, Some(&ep), Some(&es)).unwrap();
            assert_eq!(deformed, o2);
        }
    }

    #[test]
    fn zero_deformation_is_the_identity() {
        let field = Field::Q;
        let (o1, _) = builtin_octahedra(field);
        let zero = HomMatrix::zero(o1.e.clone(), o1.e.clone());
        let same = epsilon_deform(field, &o1, &zero, None, None).unwrap();
        assert_eq!(same, o1);
    }

    #[test]
    fn identity_eps_violates_squared_zero() {
        let field = Field::Q;
        let (o1, _) = builtin_octahedra(field);
        let id = HomMatrix::identity(field, &o1.e);
        match epsilon_deform(field, &o1, &id, None, None) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("eps.eps")),
            other => panic!("expected a precondition error, got {other:?}"),
        }
    }
}
