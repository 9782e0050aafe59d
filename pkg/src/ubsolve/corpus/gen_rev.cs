(>= (rev (nil) (var acc)) (+ 1 (var acc)))
(>= (rev (cons (var x) (var xs)) (var acc)) (+ 1 (rev (var xs) (cons (var x) (var acc)))))
(>= (cons (var x) (var xs)) (+ (var xs) 1))
(>= (+ (var xs) 1) (cons (var x) (var xs)))
