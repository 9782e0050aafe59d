(>= (app (nil) (var ys)) (var ys))
(>= (app (cons (var x) (var xs)) (var ys)) (cons (var x) (app (var xs) (var ys))))
(>= (cons (var x) (var xs)) (+ (var xs) 1))
(>= (+ (var xs) 1) (cons (var x) (var xs)))
