(>= (f (var x)) (g (g (var x))))
(>= (g (var x)) (+ (var x) 1))
