(>= (f (var x)) (g (var x)))
(>= (g (var x)) (f (var x)))
(>= (f (var x)) (var x))
