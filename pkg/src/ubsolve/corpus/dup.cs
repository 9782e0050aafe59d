; runtime of dup(nil) -> [], dup(x : xs) -> x : x : dup(xs)
(>= (dup (nil)) (+ 1 (nil)))
(>= (dup (cons (var x) (var xs)))
    (+ 1 (cons (var x) (cons (var x) (dup (var xs))))))
(>= (cons (var x) (var xs)) (var xs))
(>= (+ (var x) (var xs) (k))
    (cons (var x) (var xs)))
