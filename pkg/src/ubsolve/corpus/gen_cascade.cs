(>= (f (var x)) (+ (g (var x)) 1))
(>= (g (var x)) (+ (h (var x)) 1))
(>= (h (var x)) (var x))
