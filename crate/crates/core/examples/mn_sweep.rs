use lie_contract_core::su2h::mn_error;

fn main() {
    let elements = [(0.0, 0.0, 1.0), (0.5, 0.0, 0.0), (0.0, 0.5, 0.3)];
    for (x, y, t) in elements {
        print!("g=({x},{y},{t}):");
        for two_s in [20usize, 40, 80, 160, 320] {
            let e = mn_error(1.0, x, y, t, two_s, 5).unwrap();
            print!("  s={}: {:.6e}", two_s as f64 / 2.0, e);
        }
        println!();
    }
}
