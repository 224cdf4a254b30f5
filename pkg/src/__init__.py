# Legendrian Cost toolkit package
