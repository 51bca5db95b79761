//! Small fixtures: cyclic groups, S3, affine cyclic algebras, groupoids
//! built from group homomorphisms, and double groupoids built from those.

use std::sync::Arc;

use crate::algebra::{product, Algebra, Homomorphism, Signature};
use crate::error::{Error, Result};
use crate::internal::{DoubleReflexiveGraph, ReflexiveGraph};

pub const GROUP_MALTSEV_TERM: &str = "(mul (mul x (inv y)) z)";
pub const AFFINE_MALTSEV_TERM: &str = "(p x y z)";

pub fn group_signature() -> Arc<Signature> {
    Arc::new(Signature::new([("mul", 2), ("inv", 1), ("one", 0)]).expect("valid signature"))
}

pub fn affine_signature() -> Arc<Signature> {
    Arc::new(Signature::new([("p", 3)]).expect("valid signature"))
}

/// The group on `0..n` with multiplication `mul` and identity `0`.
pub fn group_from_mul(name: &str, n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Arc<Algebra>> {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(mul(a, b));
        }
    }
    let inv = (0..n)
        .map(|a| {
            (0..n)
                .find(|&b| table[a * n + b] == 0)
                .ok_or_else(|| Error::Malformed(format!("{a} has no inverse in `{name}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Algebra::new(
        name,
        n,
        group_signature(),
        vec![table, inv, vec![0]],
        GROUP_MALTSEV_TERM.parse()?,
    )
}

/// `Z_n` in the signature `{mul/2, inv/1, one/0}`.
pub fn cyclic_group(n: usize) -> Arc<Algebra> {
    group_from_mul(&format!("Z{n}"), n, |a, b| (a + b) % n).expect("cyclic group")
}

/// `Z_n` with only the operation `p(x, y, z) = x - y + z`.
pub fn cyclic_affine(n: usize) -> Arc<Algebra> {
    let mut table = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                table.push((x + n - y + z) % n);
            }
        }
    }
    Algebra::new(
        format!("A{n}"),
        n,
        affine_signature(),
        vec![table],
        AFFINE_MALTSEV_TERM.parse().expect("term"),
    )
    .expect("affine cyclic algebra")
}

/// Permutations of `{0, 1, 2}` in lexicographic order, composed as
/// `(a b)(i) = a(b(i))`. Index 0 is the identity, 3 and 4 are the 3-cycles.
pub fn symmetric_group_3() -> Arc<Algebra> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    group_from_mul("S3", 6, |a, b| {
        let composed = [0, 1, 2].map(|i| perms[a][perms[b][i]]);
        perms.iter().position(|p| *p == composed).expect("closed")
    })
    .expect("S3")
}

pub fn trivial_group() -> Arc<Algebra> {
    cyclic_group(1).renamed("1")
}

pub fn klein_group() -> Arc<Algebra> {
    let z2 = cyclic_group(2);
    product(&z2, &z2).expect("small product").algebra.renamed("Z2xZ2")
}

/// The one-element algebra in the signature of `a`.
pub fn point_of(a: &Algebra) -> Result<Arc<Algebra>> {
    let tables = vec![vec![0]; a.signature().len()];
    Algebra::new("1", 1, a.signature().clone(), tables, a.maltsev_term().clone())
}

/// `a ⇉ 1`: a group seen as a one-object graph.
pub fn one_object_graph(a: &Arc<Algebra>) -> ReflexiveGraph {
    let point = point_of(a).expect("point");
    let to_point = Homomorphism::terminal(a, &point).expect("terminal map");
    let unit = a.signature().index_of("one").map_or(0, |one| a.apply(one, &[]));
    let e = Homomorphism::new(point.clone(), a.clone(), vec![unit]).expect("unit is a subalgebra");
    ReflexiveGraph::new(to_point.clone(), to_point, e).expect("one-object graph")
}

fn cyclic_groupoid(h: Arc<Algebra>, g: Arc<Algebra>, k: usize) -> Result<ReflexiveGraph> {
    let (ho, go) = (h.size(), g.size());
    if !(k * go).is_multiple_of(ho) {
        return Err(Error::Precondition(format!(
            "g -> {k} g is not a homomorphism Z{go} -> Z{ho}"
        )));
    }
    let c1 = product(&h, &g)?.algebra.renamed(format!("{}x{}", h.name(), g.name()));
    let d = (0..ho * go).map(|i| i / go).collect();
    let c = (0..ho * go).map(|i| (i / go + k * (i % go)) % ho).collect();
    let e = (0..ho).map(|x| x * go).collect();
    ReflexiveGraph::new(
        Homomorphism::new(c1.clone(), h.clone(), d)?,
        Homomorphism::new(c1.clone(), h.clone(), c)?,
        Homomorphism::new(h, c1, e)?,
    )
}

/// The groupoid of the homomorphism `Z_g -> Z_h`, `x -> k x`: arrows
/// `(h, g)` from `h` to `h + k g`, encoded as `h * g_order + g`.
pub fn groupoid_from_hom(g_order: usize, h_order: usize, k: usize) -> Result<ReflexiveGraph> {
    cyclic_groupoid(cyclic_group(h_order), cyclic_group(g_order), k)
}

/// Same as [`groupoid_from_hom`] in the affine signature.
pub fn affine_groupoid_from_hom(g_order: usize, h_order: usize, k: usize) -> Result<ReflexiveGraph> {
    cyclic_groupoid(
        cyclic_affine(h_order).renamed(format!("A{h_order}")),
        cyclic_affine(g_order),
        k,
    )
}

/// `S3 ⇉ Z2` with both legs the sign map and a transposition as section.
pub fn sign_bundle() -> ReflexiveGraph {
    let s3 = symmetric_group_3();
    let z2 = cyclic_group(2);
    let sign = Homomorphism::new(s3.clone(), z2.clone(), vec![0, 1, 1, 0, 0, 1]).expect("sign");
    let e = Homomorphism::new(z2, s3, vec![0, 1]).expect("section");
    ReflexiveGraph::new(sign.clone(), sign, e).expect("bundle")
}

/// The bundled fixtures, in a fixed order.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub algebras: Vec<Arc<Algebra>>,
    pub graphs: Vec<(String, ReflexiveGraph)>,
    pub doubles: Vec<DoubleReflexiveGraph>,
}

pub fn bundled() -> Corpus {
    let algebras = vec![
        trivial_group(),
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        klein_group(),
        symmetric_group_3(),
        cyclic_affine(2),
        cyclic_affine(4),
    ];
    let hom_z2_z2 = groupoid_from_hom(2, 2, 1).expect("fixture");
    let hom_z2_z4 = groupoid_from_hom(2, 4, 2).expect("fixture");
    let affine_z2_z2 = affine_groupoid_from_hom(2, 2, 1).expect("fixture");
    let group_z2 = one_object_graph(&cyclic_group(2));
    let bundle = sign_bundle();
    let graphs = vec![
        ("disc_z2".to_string(), ReflexiveGraph::discrete(&cyclic_group(2))),
        ("hom_z2_z2".to_string(), hom_z2_z2.clone()),
        ("hom_z2_z4".to_string(), hom_z2_z4.clone()),
        ("affine_z2_z2".to_string(), affine_z2_z2.clone()),
        ("group_z2".to_string(), group_z2.clone()),
        ("group_klein".to_string(), one_object_graph(&klein_group())),
        ("bundle_s3".to_string(), bundle.clone()),
        ("group_s3".to_string(), one_object_graph(&symmetric_group_3())),
    ];
    let named = |g: DoubleReflexiveGraph, name: &str| g.renamed(name);
    let doubles = vec![
        named(DoubleReflexiveGraph::discrete(&trivial_group()), "point"),
        named(DoubleReflexiveGraph::discrete(&cyclic_group(2)), "disc_z2"),
        named(DoubleReflexiveGraph::discrete(&cyclic_group(4)), "disc_z4"),
        named(DoubleReflexiveGraph::discrete(&symmetric_group_3()), "disc_s3"),
        named(DoubleReflexiveGraph::vertically_discrete(&hom_z2_z2), "vdisc_hom_z2_z2"),
        named(
            DoubleReflexiveGraph::horizontally_discrete(&hom_z2_z2),
            "hdisc_hom_z2_z2",
        ),
        named(DoubleReflexiveGraph::vertically_discrete(&hom_z2_z4), "vdisc_hom_z2_z4"),
        named(
            DoubleReflexiveGraph::horizontally_discrete(&hom_z2_z4),
            "hdisc_hom_z2_z4",
        ),
        named(DoubleReflexiveGraph::vertically_discrete(&group_z2), "vdisc_group_z2"),
        named(DoubleReflexiveGraph::horizontally_discrete(&group_z2), "hdisc_group_z2"),
        named(DoubleReflexiveGraph::vertically_discrete(&bundle), "vdisc_bundle_s3"),
        named(DoubleReflexiveGraph::horizontally_discrete(&bundle), "hdisc_bundle_s3"),
        named(
            DoubleReflexiveGraph::vertically_discrete(&affine_z2_z2),
            "vdisc_affine_z2_z2",
        ),
        named(
            DoubleReflexiveGraph::product(&hom_z2_z2, &group_z2).expect("fixture"),
            "hom_z2_z2_x_group_z2",
        ),
        // rows carry no groupoid structure
        named(
            DoubleReflexiveGraph::vertically_discrete(&one_object_graph(&symmetric_group_3())),
            "vdisc_group_s3",
        ),
    ];
    Corpus {
        algebras,
        graphs,
        doubles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_tables() {
        let s3 = symmetric_group_3();
        let mul = |a, b| s3.apply_named("mul", &[a, b]).unwrap();
        assert_eq!(mul(3, 3), 4);
        assert_eq!(mul(3, 4), 0);
        assert_ne!(mul(1, 2), mul(2, 1));
        assert_eq!(klein_group().size(), 4);
        assert_eq!(point_of(&s3).unwrap().size(), 1);
    }

    #[test]
    fn groupoid_fixtures() {
        assert!(groupoid_from_hom(2, 4, 1).is_err());
        let g = groupoid_from_hom(2, 4, 2).unwrap();
        assert_eq!(g.arrows().size(), 8);
        assert_eq!(affine_groupoid_from_hom(2, 2, 1).unwrap().arrows().size(), 4);
        assert_eq!(sign_bundle().objects().size(), 2);
    }

    #[test]
    fn bundled_doubles_are_well_formed() {
        let corpus = bundled();
        assert!(corpus.doubles.len() >= 6);
        for dg in &corpus.doubles {
            assert!(dg.corner_sizes().iter().all(|&s| s <= 8), "{}", dg.name());
        }
    }
}
