fn main() {
    println!("skeinkit");
}
