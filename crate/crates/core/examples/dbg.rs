use kleinian::combination::*;
use kleinian::moebius::*;
use kleinian::sphere::*;
use kleinian::group::*;
use num_complex::Complex64;

fn pairing_map(src_c: Complex64, src_r: f64, dst_c: Complex64, dst_r: f64) -> Moebius {
    let i = Complex64::new(0.0, 1.0);
    triple_transitive(
        [SpherePoint::Finite(src_c - src_r), SpherePoint::Finite(src_c - i*src_r), SpherePoint::Finite(src_c + src_r)],
        [SpherePoint::Finite(dst_c + dst_r), SpherePoint::Finite(dst_c - i*dst_r), SpherePoint::Finite(dst_c - dst_r)],
    ).unwrap()
}

fn annulus_spec(name: &str, gamma: Moebius) -> DomainSpec {
    let inner = Disk::from_center_radius(Complex64::new(0.0, 0.0), 1.0).unwrap();
    let outer = Disk::from_center_radius(Complex64::new(0.0, 0.0), 4.0).unwrap().complement();
    DomainSpec::new(vec![inner, outer], vec![DiskPair { name: name.into(), map: gamma, src: 0, dst: 1 }]).unwrap()
}

fn main() {
    let gamma = Moebius::scaling(Complex64::new(4.0, 0.0)).unwrap();
    let u = pairing_map(Complex64::new(-2.5, 0.0), 0.35, Complex64::new(-1.6, 0.0), 0.35);
    let v = pairing_map(Complex64::new(2.5, 0.0), 0.35, Complex64::new(1.6, 0.0), 0.35);
    let mut d1 = annulus_spec("g", gamma);
    d1.disks.push(Disk::from_center_radius(Complex64::new(-2.5, 0.0), 0.35).unwrap());
    d1.disks.push(Disk::from_center_radius(Complex64::new(-1.6, 0.0), 0.35).unwrap());
    d1.pairs.push(DiskPair { name: "u".into(), map: u, src: 2, dst: 3 });
    let mut d2 = annulus_spec("g", gamma);
    d2.disks.push(Disk::from_center_radius(Complex64::new(2.5, 0.0), 0.35).unwrap());
    d2.disks.push(Disk::from_center_radius(Complex64::new(1.6, 0.0), 0.35).unwrap());
    d2.pairs.push(DiskPair { name: "v".into(), map: v, src: 2, dst: 3 });
    let g1 = d1.group().unwrap();
    let g2 = d2.group().unwrap();
    let j = Circle::line(Complex64::new(1.0, 0.0), 0.0).unwrap();
    let data = AmalgamData {
        g1, d1, h1: Word::single(1),
        g2, d2, h2: Word::single(1),
        b1: Disk::half_plane(Complex64::new(1.0, 0.0), 0.0).unwrap(),
        b2: Disk::half_plane(Complex64::new(-1.0, 0.0), 0.0).unwrap(),
        j,
    };
    let conj = Moebius::new(
        Complex64::new(1.0, 0.3), Complex64::new(0.2, -0.1),
        Complex64::new(0.05, 0.02), Complex64::new(1.0, 0.0),
    ).unwrap();
    let moved = conjugate_amalgam(&data, &conj).unwrap();
    let cert = amalgamate(&moved, 3).unwrap();
    println!("verdict {:?}", cert.verdict);
    for c in &cert.conditions {
        println!("  {} margin={:e} passed={} witness={:?}", c.name, c.margin, c.passed, c.witness);
    }
}
