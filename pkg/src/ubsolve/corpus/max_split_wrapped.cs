(>= (max (* 2 (var x)) (* 2 (var y))) (+ (g (var x)) (var y)))
(>= (g (var x)) (var x))
