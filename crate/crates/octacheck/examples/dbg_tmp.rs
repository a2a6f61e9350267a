use octacheck::exactalg::{Field, Scalar};
use octacheck::scat::*;
use octacheck::tri::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_auto(field: Field, cat: &PresCategory, obj: &SumObject, rng: &mut ChaCha8Rng) -> SMorphism {
    loop {
        let unk = SMorUnknowns::new(cat, obj, obj);
        let vals: Vec<Scalar> = (0..unk.len()).map(|_| field.sample(rng)).collect();
        let m = unk.matrix_from(field, cat, &vals);
        if m.inverse(field, cat).is_some() { return m; }
    }
}

fn main() {
    let field = Field::fp(3).unwrap();
    let policy = SearchPolicy::default();
    let cat = build_category(field, BuiltinCategory::S).unwrap();
    let ids = SArrows::lookup(&cat);
    let (o1, _) = builtin_octahedra(field);
    let (functor, _) = functor_from_octahedron(field, &cat, &ids, &o1, &policy).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let arrow = |x: usize, n: i64| SPiece::Arrow { arrow: x, shift: n };
    let generating: Vec<(SPiece, SPiece, SPiece)> = vec![
        (arrow(ids.f, 0), arrow(ids.fp, 0), arrow(ids.fpp, 0)),
        (arrow(ids.h, 0), arrow(ids.hp, 0), arrow(ids.hpp, 0)),
        (arrow(ids.g, 1), arrow(ids.gp, 1), arrow(ids.gpp, 1)),
        (arrow(ids.k, 0), arrow(ids.kp, 0), arrow(ids.kpp, 0)),
        (arrow(ids.l, 0), SPiece::PairKH { shift: 0 }, SPiece::PairGSF { shift: 0 }),
        (SPiece::PairGF { shift: 0 }, SPiece::PairHK { shift: 0 }, arrow(ids.lp, 0)),
    ];
    let count = rng.gen_range(1..=2);
    println!("count {count}");
    let mut f = SMorphism::zero(SumObject::zero(), SumObject::zero());
    let mut g = f.clone();
    let mut h = f.clone();
    for _ in 0..count {
        let pick = rng.gen_range(0..generating.len());
        println!("picked triangle {pick}");
        let (a, b, c) = &generating[pick];
        f = direct_sum_smor(field, &cat, &f, &a.canonical_smor(field, &cat, &ids));
        g = direct_sum_smor(field, &cat, &g, &b.canonical_smor(field, &cat, &ids));
        h = direct_sum_smor(field, &cat, &h, &c.canonical_smor(field, &cat, &ids));
    }
    let p0 = random_auto(field, &cat, &f.src, &mut rng);
    let p1 = random_auto(field, &cat, &f.tgt, &mut rng);
    let p2 = random_auto(field, &cat, &g.tgt, &mut rng);
    let comp = |a: &SMorphism, b: &SMorphism| SMorphism::compose(field, &cat, a, b);
    let t = STriangle::new(
        comp(&p1, &comp(&f, &p0.inverse(field, &cat).unwrap())),
        comp(&p2, &comp(&g, &p1.inverse(field, &cat).unwrap())),
        comp(&p0.shifted(1), &comp(&h, &p2.inverse(field, &cat).unwrap())),
    ).unwrap();
    let rep = is_distinguished_s(field, &cat, &ids, &t, &policy).unwrap();
    println!("S verdict {:?}", rep.verdict);
    let image = Triangle::new(
        functor.apply_morphism(field, &cat, &t.f),
        functor.apply_morphism(field, &cat, &t.g),
        functor.apply_morphism(field, &cat, &t.h),
    ).unwrap();
    let rep = is_distinguished(field, &image, &policy).unwrap();
    println!("T verdict {:?} dim {:?} pieces {:?}", rep.verdict, rep.solution_dim, rep.cone_pieces);
}
