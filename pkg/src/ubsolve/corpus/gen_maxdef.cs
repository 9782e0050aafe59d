(>= (f (var x) (var y)) (max (var x) (var y)))
(>= (g (var x)) (f (var x) 1))
