#[test]
fn debug_bidiag2() {
    use gpcert_core::mat::ComplexMatrix;
    use gpcert_core::mat::eig::eigenvalues;
    use gpcert_core::Cx;
    let n = 6;
    let m = ComplexMatrix::from_fn(n, n, |i, j| {
        let x = ((i * 13 + j * 5 + 3) % 17) as f64 - 8.0;
        let y = ((i * 3 + j * 11) % 7) as f64 - 3.0;
        Cx::new(x / 8.0, y / 3.5)
    });
    // independent truth
    let gram = m.adjoint().matmul(&m);
    let mut ev: Vec<f64> = eigenvalues(&gram).unwrap().iter().map(|z| z.re.max(0.0).sqrt()).collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    println!("truth : {:?}", ev);
    let sv = gpcert_core::mat::svd::singular_values(&m).unwrap();
    println!("svd   : {:?}", sv);
    panic!("debug");
}
